#include <cstdio>
#include <exception>

#include <CLI11.hpp>
#include <pwinterp/errors.hpp>
#include <pwinterp/version.hpp>

#include "context.hpp"

// Exit codes, also listed in the README:
//   0 success          4 parameter out of range   7 numerical failure
//   2 usage error      5 input file parse error   8 artifact write error
//   3 config error     6 domain precondition
int main(int argc, char** argv) {
  CLI::App app{"Band-limited interpolation and minimum-norm control toolkit"};
  app.set_version_flag("--version", std::string("pwinterp ") + pwinterp::version_string);
  app.require_subcommand(1);

  pwtool::register_sequence_commands(app);
  pwtool::register_multiplier_commands(app);
  pwtool::register_interpolation_commands(app);
  pwtool::register_control_commands(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const pwinterp::ConfigError& e) {
    std::fprintf(stderr, "pwinterp: config error: %s\n", e.what());
    return 3;
  } catch (const pwinterp::ParameterRange& e) {
    std::fprintf(stderr, "pwinterp: parameter out of range: %s\n", e.what());
    return 4;
  } catch (const pwinterp::IoError& e) {
    std::fprintf(stderr, "pwinterp: input error: %s\n", e.what());
    return 5;
  } catch (const pwinterp::OutputError& e) {
    std::fprintf(stderr, "pwinterp: write error: %s\n", e.what());
    return 8;
  } catch (const pwinterp::NumericError& e) {
    std::fprintf(stderr, "pwinterp: numerical failure: %s\n", e.what());
    return 7;
  } catch (const pwinterp::Error& e) {
    std::fprintf(stderr, "pwinterp: %s\n", e.what());
    return 6;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pwinterp: internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
