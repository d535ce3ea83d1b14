#include "simpeval/store/session_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "simpeval/error.hpp"
#include "simpeval/session.hpp"

namespace simpeval {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

[[noreturn]] void io_failure(const std::string& what, const fs::path& path) {
  throw Error(ErrorCode::IoError, what + " " + path.string() + ": " + std::strerror(errno));
}

std::string temp_suffix() {
  static thread_local std::mt19937_64 engine{std::random_device{}()};
  return std::to_string(engine());
}

std::string preview(const std::string& text, std::size_t max_bytes = 80) {
  std::string flat;
  for (char c : text) flat.push_back(c == '\n' || c == '\r' || c == '\t' ? ' ' : c);
  if (flat.size() <= max_bytes) return flat;
  std::size_t cut = max_bytes;
  while (cut > 0 && (static_cast<unsigned char>(flat[cut]) & 0xC0) == 0x80) --cut;
  return flat.substr(0, cut) + "...";
}

}  // namespace

bool is_valid_session_id(std::string_view session_id) {
  if (session_id.empty() || session_id.size() > 64) return false;
  return std::all_of(session_id.begin(), session_id.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-' ||
           c == '_';
  });
}

SessionStore::SessionStore(fs::path data_dir)
    : data_dir_(std::move(data_dir)), sessions_dir_(data_dir_ / "sessions") {
  std::error_code ec;
  fs::create_directories(sessions_dir_, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + sessions_dir_.string() + ": " + ec.message());
}

fs::path SessionStore::session_path(const std::string& session_id) const {
  return sessions_dir_ / (session_id + ".json");
}

void SessionStore::write_atomically(const fs::path& target, const std::string& contents) {
  const fs::path temp = target.parent_path() / ("." + target.filename().string() + ".tmp-" + temp_suffix());
  const int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_failure("cannot create", temp);

  auto discard = [&] {
    std::error_code ec;
    fs::remove(temp, ec);
  };
  std::size_t written = 0;
  while (written < contents.size()) {
    const auto n = ::write(fd, contents.data() + written, contents.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      discard();
      io_failure("cannot write", temp);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    discard();
    io_failure("cannot sync", temp);
  }

  try {
    if (fault_hook_) fault_hook_("temp_written");
  } catch (...) {
    discard();
    throw;
  }

  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    discard();
    throw Error(ErrorCode::IoError, "cannot rename onto " + target.string() + ": " + ec.message());
  }
  if (const int dir = ::open(target.parent_path().c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC); dir >= 0) {
    ::fsync(dir);
    ::close(dir);
  }
}

std::shared_ptr<std::mutex> SessionStore::lock_for(const std::string& session_id) {
  std::lock_guard guard(locks_mutex_);
  auto& slot = session_locks_[session_id];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

void SessionStore::save_session(const EvaluationSession& session) {
  validate_session(session);
  if (!is_valid_session_id(session.session_id)) {
    throw Error(ErrorCode::InvalidDocument, "session id contains unsupported characters", "session_id");
  }
  const auto lock = lock_for(session.session_id);
  std::lock_guard guard(*lock);
  write_atomically(session_path(session.session_id), session_to_json(session).dump(2) + "\n");
}

bool SessionStore::contains(const std::string& session_id) const {
  std::error_code ec;
  return is_valid_session_id(session_id) && fs::is_regular_file(session_path(session_id), ec);
}

EvaluationSession SessionStore::load_session(const std::string& session_id) const {
  if (!contains(session_id)) {
    throw Error(ErrorCode::NotFound, "no session '" + session_id + "'", "session_id");
  }
  const auto doc = Json::parse(read_file(session_path(session_id)), nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::InvalidDocument, "session file is not valid JSON", "session_id");
  }
  return session_from_json(doc);
}

std::vector<SessionSummary> SessionStore::list_sessions() const {
  std::vector<SessionSummary> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(sessions_dir_, ec)) {
    const auto name = entry.path().filename().string();
    if (name.starts_with('.') || entry.path().extension() != ".json") continue;
    try {
      const auto doc = Json::parse(read_file(entry.path()));
      out.push_back({doc.at("session_id").get<std::string>(), doc.at("created_at").get<std::string>(),
                     preview(doc.at("source_text").get<std::string>())});
    } catch (const std::exception& e) {
      spdlog::warn("skipping unreadable session file {}: {}", name, e.what());
    }
  }
  std::sort(out.begin(), out.end(), [](const SessionSummary& a, const SessionSummary& b) {
    if (a.created_at != b.created_at) return a.created_at > b.created_at;
    return a.session_id < b.session_id;
  });
  return out;
}

EvaluationSession SessionStore::update_session(const std::string& session_id,
                                               const std::function<void(EvaluationSession&)>& mutate) {
  if (!contains(session_id)) {
    throw Error(ErrorCode::NotFound, "no session '" + session_id + "'", "session_id");
  }
  const auto lock = lock_for(session_id);
  std::lock_guard guard(*lock);
  auto session = load_session(session_id);
  mutate(session);
  validate_session(session);
  write_atomically(session_path(session_id), session_to_json(session).dump(2) + "\n");
  return session;
}

SettingsDocument SessionStore::load_settings() const {
  std::lock_guard guard(settings_mutex_);
  const auto path = data_dir_ / "settings.json";
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return default_settings();
  const auto doc = Json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::InvalidSettings, "settings.json is not valid JSON");
  return settings_from_json(doc);
}

void SessionStore::save_settings(const SettingsDocument& settings) {
  validate_settings(settings);
  std::lock_guard guard(settings_mutex_);
  write_atomically(data_dir_ / "settings.json", settings_to_json(settings).dump(2) + "\n");
}

}  // namespace simpeval
