#include <exception>
#include <iostream>

#include "cdf2pdf/errors.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

// single-line machine-readable failure: cdf2pdf: <kind>: <message>
int fail(const char* kind, const std::string& msg, int code) {
  std::cerr << "cdf2pdf: " << kind << ": " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cdf2pdf;
  try {
    const cli::CliArgs args = cli::parse_cli(argc, argv);
    if (args.command == "help") {
      std::cout << cli::usage_text();
      return 0;
    }
    if (args.command == "version") {
      std::cout << "cdf2pdf " << cli::kToolVersion << "\n";
      return 0;
    }
    const cli::RunConfig cfg = cli::load_run_config(args);
    const std::string echo = cli::echo_config(cfg);
    std::cout << echo << "\n";
    cli::run_command(args.command, cfg, echo);
    return 0;
  } catch (const ConfigError& e) {
    return fail("config", e.what(), 2);
  } catch (const ParseError& e) {
    return fail("config", e.what(), 2);
  } catch (const DomainError& e) {
    return fail("config", e.what(), 2);
  } catch (const ShapeError& e) {
    return fail("config", e.what(), 2);
  } catch (const DependencyError& e) {
    return fail("dependency", e.what(), 3);
  } catch (const NumericError& e) {
    return fail("numeric", e.what(), 4);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
}
