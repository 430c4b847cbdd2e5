#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "modpairs/base.hh"
#include "modpairs/cli.hh"

namespace {

// '-' reads stdin
std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("file", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modulus pair calculator"};
  app.require_subcommand(1);

  std::string order = "grevlex";
  long max_degree = 0;
  bool json = false;
  app.add_option("--order", order, "monomial order for printed witnesses")
      ->check(CLI::IsMember({"lex", "grevlex"}));
  app.add_option("--max-degree", max_degree,
                 "reject input polynomials above this total degree")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "emit the report as JSON");

  std::string check_file, print_file;
  CLI::App* check = app.add_subcommand("check", "run a script and report");
  check->add_option("file", check_file, "script file, or - for stdin")
      ->required();
  CLI::App* print = app.add_subcommand("print", "parse and reprint a script");
  print->add_option("file", print_file, "script file, or - for stdin")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (print->parsed()) {
      modpairs::cli::Script s = modpairs::cli::parse(slurp(print_file));
      std::fputs(modpairs::cli::print_script(s).c_str(), stdout);
      return 0;
    }
    modpairs::cli::Script s = modpairs::cli::parse(slurp(check_file));
    modpairs::cli::RunOptions opt;
    opt.order = order == "lex" ? modpairs::MonomialOrder::Lex()
                               : modpairs::MonomialOrder::Grevlex();
    if (max_degree > 0) opt.max_degree = max_degree;
    opt.json = json;
    modpairs::cli::RunResult r = modpairs::cli::run(s, opt);
    std::fputs(r.report.c_str(), stdout);
    if (!r.timing.empty()) {
      if (json)
        std::fputs(r.timing.c_str(), stderr);
      else
        std::fputs(r.timing.c_str(), stdout);
    }
    if (!r.diagnostic.empty())
      std::fprintf(stderr, "error: %s\n", r.diagnostic.c_str());
    return r.exit_code;
  } catch (const modpairs::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
