#ifndef MINUTES_STORE_HPP_
#define MINUTES_STORE_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minutes/meeting.hpp"

// On-disk corpus format. One directory per meeting:
//
//   meeting.meta                          key=value lines
//   transcripts/<tver>.tsv                speaker \t start \t end \t text
//   summaries/<sver>.txt                  <indent symbol>*depth text
//   alignments/<tver>__<sver>.tsv         da_index \t P<point_index> | M:<label>
//   alignments/<tver>__<sver>__<ann>.tsv  same, one annotator's alignment
//   evaluations/<tver>__<sver>__<ann>.tsv point_index \t A \t G \t F, then DOC \t A
//
// Files are UTF-8 with LF line endings and no BOM. Ids are written as
// 0-based positions within their version and rebound to fresh ids on load.
namespace minutes::store {

// Backslash escaping of tab, newline and backslash.
std::string escape(std::string_view raw);
// Throws Errc::kParseError on a dangling backslash or an unknown escape.
std::string unescape(std::string_view escaped);

// Relative path (forward slashes) -> file contents.
using FileTree = std::map<std::string, std::string>;

// Canonical serialization. Throws kEmptyDaText naming the DA location.
FileTree render_meeting(const Meeting& meeting);

// Reconstructs a meeting from a file tree; revision starts at 0.
// Throws kMissingFile, kParseError, kDanglingReference, kEmptyDaText.
Meeting parse_meeting(const FileTree& tree);

// Reads meeting.meta and every file below the four version directories;
// anything else in the meeting directory (media, notes) is left alone.
// Throws kIoFailure / kMissingFile.
FileTree read_tree(const std::filesystem::path& root);

// Writes into a sibling temporary directory, then renames file by file and
// removes stale version files. Throws kIoFailure, kEmptyDaText.
void save_meeting(const Meeting& meeting, const std::filesystem::path& root);
Meeting load_meeting(const std::filesystem::path& root);

enum class Severity { kError, kWarning };
std::string_view severity_name(Severity severity) noexcept;

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;  // e.g. "DuplicateAlignment"
  std::string file;  // relative to the meeting root
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::size_t column = 0;
  std::string message;
};

// Never throws for content problems; I/O problems become diagnostics too.
std::vector<Diagnostic> validate(const std::filesystem::path& root);
std::vector<Diagnostic> validate_tree(const FileTree& tree);

std::string format_diagnostic(const Diagnostic& d);

// Scaffolds <corpus>/<id> with one empty transcript and summary version.
// Throws kAlreadyExists when the meeting directory already exists.
void create_meeting(const std::filesystem::path& corpus, const std::string& id,
                    const std::string& transcript = "main",
                    const std::string& summary = "main");

// Non-hidden sub-directories of `corpus` that contain a meeting.meta, sorted.
std::vector<std::filesystem::path> list_meetings(const std::filesystem::path& corpus);
bool is_meeting_dir(const std::filesystem::path& dir);

}  // namespace minutes::store

#endif  // MINUTES_STORE_HPP_
