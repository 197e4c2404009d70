// Command-line front end: serve, check, export, ask, predict, import.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cnlwiki/gateway.hpp"

using namespace cnlwiki;

namespace {

std::string data_dir(const std::string& given) {
  if (!given.empty()) return given;
  if (const char* env = std::getenv("CNLWIKI_DATA"); env && *env) return env;
  throw Error("missing-data-dir", "no data directory given and CNLWIKI_DATA is unset");
}

int run_check(const std::string& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("load-failure", "no such directory " + dir);
  const WikiState state = load_state(dir);
  std::cout << "ok: " << state.lexicon.entries().size() << " words, " << state.statements.size() << " statements, "
            << state.ontology.size() << " axioms\n";
  return 0;
}

int run_export(const std::string& dir, const std::string& out) {
  const Wiki wiki(dir);
  const std::string text = wiki.export_ontology();
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!(file << text)) throw Error("storage-failure", "cannot write " + out);
  return 0;
}

int run_ask(const std::string& dir, const std::string& question) {
  const Wiki wiki(dir);
  const AskResult r = wiki.ask(std::string_view(question));
  switch (r.kind) {
    case AskResult::Kind::Individuals:
      for (const auto& p : r.individuals) std::cout << p << "\n";
      break;
    case AskResult::Kind::Verdict: std::cout << to_string(r.answer) << "\n"; break;
    case AskResult::Kind::Red: std::cout << "red(" << to_string(*r.reason) << ")\n"; break;
  }
  return 0;
}

int run_predict(const std::string& dir, const std::string& prefix) {
  const Wiki wiki(dir);
  std::cout << to_json(wiki.predict(prefix)).dump() << "\n";
  return 0;
}

// Lines are "<article>\t<sentence>"; blank lines and lines starting with '#'
// are skipped. Prints "<line>\t<status>\t<id>" or "<line>\terror\t<code>".
int run_import(const std::string& dir, const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error("load-failure", "cannot read " + file);
  Wiki wiki(dir);
  std::string line;
  int number = 0;
  int failures = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    try {
      if (tab == std::string::npos) throw Error("malformed-request", "expected <article><TAB><sentence>");
      const Statement s = wiki.add_statement(line.substr(0, tab), std::string_view(line).substr(tab + 1));
      std::cout << number << "\t" << status_code(s) << "\t" << s.id << "\n";
    } catch (const Error& e) {
      ++failures;
      std::cout << number << "\terror\t" << e.code() << "\t" << e.what() << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled-English ontology wiki"};
  app.require_subcommand(1);

  std::string dir, text, out, host = "127.0.0.1";
  int port = 8080;

  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP+JSON API");
  serve_cmd->add_option("--data", dir, "Data directory (default: $CNLWIKI_DATA)");
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host, "Address to bind");

  auto* check_cmd = app.add_subcommand("check", "Load a data directory and verify the gate invariant");
  check_cmd->add_option("dir", dir, "Data directory");

  auto* export_cmd = app.add_subcommand("export", "Write the committed ontology");
  export_cmd->add_option("dir", dir, "Data directory");
  export_cmd->add_option("-o,--output", out, "Output file (default: stdout)");

  auto* ask_cmd = app.add_subcommand("ask", "Answer a question");
  ask_cmd->add_option("dir", dir, "Data directory")->required();
  ask_cmd->add_option("question", text, "Question, e.g. \"which countries border switzerland ?\"")->required();

  auto* predict_cmd = app.add_subcommand("predict", "Print the continuations of a sentence prefix as JSON");
  predict_cmd->add_option("dir", dir, "Data directory")->required();
  predict_cmd->add_option("prefix", text, "Prefix, space separated");

  auto* import_cmd = app.add_subcommand("import", "Add sentences from a file of <article><TAB><sentence> lines");
  import_cmd->add_option("dir", dir, "Data directory")->required();
  import_cmd->add_option("file", text, "Input file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (serve_cmd->parsed()) {
      Wiki wiki{std::filesystem::path(data_dir(dir))};
      Api api(wiki);
      std::cerr << "listening on " << host << ":" << port << "\n";
      serve(api, host, port);
      return 0;
    }
    if (check_cmd->parsed()) return run_check(data_dir(dir));
    if (export_cmd->parsed()) return run_export(data_dir(dir), out);
    if (ask_cmd->parsed()) return run_ask(data_dir(dir), text);
    if (predict_cmd->parsed()) return run_predict(data_dir(dir), text);
    if (import_cmd->parsed()) return run_import(data_dir(dir), text);
  } catch (const Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
