#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asid::firmware {

inline constexpr std::string_view kGroundFile = "ground.csv";
inline constexpr std::string_view kAirFile = "air.csv";
inline constexpr std::string_view kPhotosFile = "photos.json";

/// Emulated SD card: a flat namespace of files. Optionally backed by a host
/// directory, in which case every mutation is written through immediately.
class SdCardImage {
 public:
  SdCardImage() = default;

  /// Loads every regular file of `dir` and keeps the directory as backing store.
  static SdCardImage open_directory(const std::filesystem::path& dir);

  /// False when writes are failing (card missing or write-protected).
  bool append(std::string_view name, std::string_view bytes);
  bool write(std::string_view name, std::string_view bytes);
  bool remove(std::string_view name);

  bool exists(std::string_view name) const;
  std::optional<std::string> read(std::string_view name) const;
  std::vector<std::string> list() const;

  /// Copies the current contents into `dir` (creating it).
  void save_to(const std::filesystem::path& dir) const;

  /// Fault injection: while set, append/write fail and leave the card unchanged.
  void set_write_failure(bool failing) { failing_ = failing; }

 private:
  void write_through(const std::string& name) const;

  std::map<std::string, std::string, std::less<>> files_;
  std::optional<std::filesystem::path> backing_;
  bool failing_ = false;
};

}  // namespace asid::firmware
