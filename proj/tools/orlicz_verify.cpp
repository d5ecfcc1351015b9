// Command-line front end: one verification workflow per invocation,
// deterministic report to stdout or a file.
//
//   orlicz-verify <command> [--config <path>] [--key value ...]
//                 [--out <path>] [--format json|csv] [--expect-fail]
//
// Exit codes: 0 all checks passed, 1 a verification check failed,
// 2 the configuration was unusable. --expect-fail swaps 0 and 1 so a
// run that demonstrates a counterexample can be scripted as success.

#include <chrono>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/config.hpp"
#include "orlicz/pipelines.hpp"
#include "orlicz/report.hpp"

namespace {

void usage(std::FILE* to) {
  std::fprintf(to,
               "usage: orlicz-verify <command> [--config <path>] [--key value ...]\n"
               "                     [--out <path>] [--format json|csv] [--expect-fail]\n"
               "commands: verify-family, tree, goodlambda, hardy-report\n");
}

}  // namespace

int main(int argc, char** argv) {
  using orlicz::Config;
  using orlicz::ConfigError;

  try {
    if (argc < 2) {
      usage(stderr);
      return 2;
    }
    std::string command = argv[1];
    if (command == "--help" || command == "help") {
      usage(stdout);
      return 0;
    }

    std::vector<std::pair<std::string, std::string>> overrides;
    for (int i = 2; i < argc; ++i) {
      std::string tok = argv[i];
      if (tok.rfind("--", 0) != 0)
        throw ConfigError("command-line", "expected --key, got '" + tok + "'");
      std::string key = tok.substr(2);
      if (key.empty()) throw ConfigError("command-line", "empty option name");
      std::string value = "true";
      if (i + 1 < argc && std::string(argv[i + 1]).rfind("--", 0) != 0) value = argv[++i];
      overrides.emplace_back(key, value);
    }

    Config cfg;
    for (const auto& [key, value] : overrides)
      if (key == "config") cfg = Config::from_file(value);
    for (const auto& [key, value] : overrides)
      if (key != "config") cfg.set(key, value);

    std::string format = cfg.get_string("format", "json");
    if (format != "json" && format != "csv")
      throw ConfigError("format", "expected json or csv, got '" + format + "'");
    std::string out = cfg.get_string("out", "");
    bool expect_fail = cfg.get_bool("expect-fail", false);

    auto t0 = std::chrono::steady_clock::now();
    orlicz::Report rep = orlicz::run_command(command, cfg);
    rep.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string body = format == "json" ? orlicz::to_json(rep) : orlicz::to_csv(rep);
    if (out.empty()) {
      std::fputs(body.c_str(), stdout);
    } else {
      orlicz::write_text_file(out, body);
      std::printf("%s: wrote %s (%s)\n", command.c_str(), out.c_str(),
                  rep.pass ? "pass" : "fail");
    }

    bool ok = expect_fail ? !rep.pass : rep.pass;
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
