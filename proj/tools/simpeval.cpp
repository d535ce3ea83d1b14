#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include "simpeval/align/linearity.hpp"
#include "simpeval/align/similarity.hpp"
#include "simpeval/api/config.hpp"
#include "simpeval/api/service.hpp"
#include "simpeval/error.hpp"
#include "simpeval/session.hpp"
#include "simpeval/store/codec.hpp"
#include "simpeval/store/export.hpp"
#include "simpeval/store/session_store.hpp"
#include "simpeval/text/analysis.hpp"

using namespace simpeval;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read " + path, path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

SyllableCounter syllable_counter(const ServerConfig& config) {
  std::shared_ptr<const HyphenationRegistry> registry;
  if (!config.hyphenation_dir.empty()) {
    registry = std::make_shared<HyphenationRegistry>(HyphenationRegistry::load_directory(config.hyphenation_dir));
  }
  return SyllableCounter(config.language, std::move(registry));
}

int serve(const ServerConfig& config) {
  SessionStore store(config.data_dir);
  HttpLlmClient llm(config.provider);
  auto embedder = make_embedding_provider(config);
  MatrixOptions matrix;
  matrix.concurrency_cap = config.concurrency_cap;
  matrix.syllables = syllable_counter(config);
  ApiService service(store, llm, *embedder, config.provider, matrix,
                     ServiceOptions{config.allowed_origin, config.static_dir});

  httplib::Server server;
  service.register_routes(server);
  spdlog::info("listening on {}:{} (data in {})", config.host, config.port, config.data_dir.string());
  if (config.embedding_url.empty()) spdlog::warn("no embedding endpoint configured; using the lexical tier");
  if (!server.listen(config.host, config.port)) {
    spdlog::error("cannot listen on {}:{}", config.host, config.port);
    return 1;
  }
  return 0;
}

int align_files(const ServerConfig& config, const std::string& original, const std::string& simplified,
                double lambda) {
  const auto counter = syllable_counter(config);
  const auto orig = segment(read_input(original), counter);
  const auto simp = segment(read_input(simplified), counter);
  if (orig.empty() || simp.empty()) throw Error(ErrorCode::EmptySource, "both texts need at least one sentence");
  auto embedder = make_embedding_provider(config);
  const auto matrix = build_similarity(*embedder, orig, simp);
  const auto links = align(matrix, relative_positions(orig), relative_positions(simp), lambda);

  Json out = {{"tier", to_string(matrix.tier)},
              {"lambda", lambda},
              {"crossings", count_crossings(links)},
              {"alignments", links_to_json(links)}};
  for (auto& link : out["alignments"]) {
    link["simplified"] = simp[link["simplified_index"].get<std::size_t>()].text;
    link["original"] = orig[link["original_index"].get<std::size_t>()].text;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int readability_report(const ServerConfig& config, const std::string& input, const std::string& source) {
  const auto counter = syllable_counter(config);
  std::optional<std::size_t> source_words;
  if (!source.empty()) source_words = analyze_text(read_input(source), counter).report.word_count;
  const auto analyzed = analyze_text(read_input(input), counter, source_words);
  std::cout << report_to_json(analyzed.report).dump(2) << "\n";
  return 0;
}

int list_sessions(const ServerConfig& config) {
  SessionStore store(config.data_dir);
  for (const auto& s : store.list_sessions()) {
    std::cout << s.session_id << "  " << s.created_at << "  " << s.source_preview << "\n";
  }
  return 0;
}

int export_session(const ServerConfig& config, const std::string& id, const std::string& format,
                   const std::string& output) {
  SessionStore store(config.data_dir);
  const auto session = store.load_session(id);
  const auto body = format == "csv" ? export_csv(session) : export_json(session);
  if (output.empty() || output == "-") {
    std::cout << body;
  } else {
    std::ofstream out(output, std::ios::binary);
    out << body;
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + output, output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate LLM text simplification: sentence alignment, readability and annotation service"};
  app.require_subcommand(1);

  ServerConfig config;
  try {
    config = server_config_from_env([](const char* name) { return std::getenv(name); });
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::string data_dir = config.data_dir.string();
  app.add_option("--data-dir", data_dir, "Session and settings directory")->capture_default_str();
  app.add_option("--language", config.language, "Language for syllable counting")->capture_default_str();
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  auto* serve_cmd = app.add_subcommand("serve", "Run the REST service");
  serve_cmd->add_option("--host", config.host, "Listen address")->capture_default_str();
  serve_cmd->add_option("--port", config.port, "Listen port")->capture_default_str()->check(CLI::Range(1, 65535));
  std::string static_dir = config.static_dir.string();
  serve_cmd->add_option("--static-dir", static_dir, "Built UI assets served at /");
  serve_cmd->add_option("--allowed-origin", config.allowed_origin, "CORS origin of the UI");

  auto* align_cmd = app.add_subcommand("align", "Align a simplified text against its original");
  std::string original, simplified;
  double lambda = kDefaultLambda;
  align_cmd->add_option("original", original, "Original text file, or - for stdin")->required();
  align_cmd->add_option("simplified", simplified, "Simplified text file")->required();
  align_cmd->add_option("-l,--lambda", lambda, "Linearity bias")->capture_default_str()->check(
      CLI::Range(kMinLambda, kMaxLambda));
  align_cmd->add_option("--embedding-url", config.embedding_url, "Embedding endpoint, or 'mock'");

  auto* read_cmd = app.add_subcommand("readability", "Print readability metrics for a text");
  std::string input, source;
  read_cmd->add_option("input", input, "Text file, or - for stdin")->required();
  read_cmd->add_option("--source", source, "Original text, for the compression ratio");

  auto* list_cmd = app.add_subcommand("sessions", "List stored sessions, newest first");

  auto* export_cmd = app.add_subcommand("export", "Export a stored session");
  std::string session_id, format = "json", output;
  export_cmd->add_option("session_id", session_id, "Session id")->required();
  export_cmd->add_option("-f,--format", format, "json or csv")->capture_default_str()->check(
      CLI::IsMember({"json", "csv"}));
  export_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);
  config.data_dir = data_dir;
  config.static_dir = static_dir;

  try {
    if (*serve_cmd) return serve(config);
    if (*align_cmd) return align_files(config, original, simplified, lambda);
    if (*read_cmd) return readability_report(config, input, source);
    if (*list_cmd) return list_sessions(config);
    if (*export_cmd) return export_session(config, session_id, format, output);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
