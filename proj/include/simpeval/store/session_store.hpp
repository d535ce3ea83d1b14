#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "simpeval/store/codec.hpp"
#include "simpeval/types.hpp"

namespace simpeval {

struct SessionSummary {
  std::string session_id;
  std::string created_at;
  std::string source_preview;
};

// File-backed store:
//   <data_dir>/settings.json
//   <data_dir>/sessions/<session_id>.json
// Every write goes to a temporary file in the same directory which is fsynced
// and then renamed over the target, so readers only ever see complete files.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path data_dir);

  const std::filesystem::path& data_dir() const { return data_dir_; }

  // Validates, then writes atomically. Throws InvalidDocument or IoError.
  void save_session(const EvaluationSession& session);
  // Throws NotFound for unknown or malformed ids.
  EvaluationSession load_session(const std::string& session_id) const;
  bool contains(const std::string& session_id) const;
  // Newest first; unreadable files are skipped.
  std::vector<SessionSummary> list_sessions() const;

  // Loads, applies `mutate`, saves, and returns the stored result, holding the
  // session's lock throughout so concurrent updates never interleave.
  EvaluationSession update_session(const std::string& session_id,
                                   const std::function<void(EvaluationSession&)>& mutate);

  // Defaults when settings.json does not exist yet.
  SettingsDocument load_settings() const;
  void save_settings(const SettingsDocument& settings);

  // Test hook called with "temp_written" after the temporary file is synced
  // and before it is renamed into place. Throwing from it aborts the write.
  void set_fault_hook(std::function<void(std::string_view stage)> hook) { fault_hook_ = std::move(hook); }

 private:
  std::filesystem::path session_path(const std::string& session_id) const;
  void write_atomically(const std::filesystem::path& target, const std::string& contents);
  std::shared_ptr<std::mutex> lock_for(const std::string& session_id);

  std::filesystem::path data_dir_;
  std::filesystem::path sessions_dir_;
  std::function<void(std::string_view)> fault_hook_;
  std::mutex locks_mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> session_locks_;
  mutable std::mutex settings_mutex_;
};

bool is_valid_session_id(std::string_view session_id);

}  // namespace simpeval
