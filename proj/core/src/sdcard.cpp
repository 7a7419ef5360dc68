#include "asid/sdcard.hpp"

#include <fstream>
#include <iterator>

#include "asid/error.hpp"

namespace asid::firmware {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace

SdCardImage SdCardImage::open_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("SD-card directory not found: " + dir.string());
  SdCardImage image;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      image.files_[entry.path().filename().string()] = slurp(entry.path());
    }
  }
  image.backing_ = dir;
  return image;
}

bool SdCardImage::append(std::string_view name, std::string_view bytes) {
  if (failing_) return false;
  auto it = files_.find(name);
  if (it == files_.end()) it = files_.emplace(std::string(name), std::string()).first;
  it->second.append(bytes);
  write_through(it->first);
  return true;
}

bool SdCardImage::write(std::string_view name, std::string_view bytes) {
  if (failing_) return false;
  auto it = files_.find(name);
  if (it == files_.end()) it = files_.emplace(std::string(name), std::string()).first;
  it->second.assign(bytes);
  write_through(it->first);
  return true;
}

bool SdCardImage::remove(std::string_view name) {
  const auto it = files_.find(name);
  if (it == files_.end()) return false;
  if (backing_) {
    std::error_code ec;
    fs::remove(*backing_ / it->first, ec);
  }
  files_.erase(it);
  return true;
}

bool SdCardImage::exists(std::string_view name) const { return files_.find(name) != files_.end(); }

std::optional<std::string> SdCardImage::read(std::string_view name) const {
  const auto it = files_.find(name);
  if (it == files_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> SdCardImage::list() const {
  std::vector<std::string> names;
  for (const auto& [name, bytes] : files_) names.push_back(name);
  return names;
}

void SdCardImage::save_to(const fs::path& dir) const {
  fs::create_directories(dir);
  for (const auto& [name, bytes] : files_) dump(dir / name, bytes);
}

void SdCardImage::write_through(const std::string& name) const {
  if (backing_) dump(*backing_ / name, files_.find(name)->second);
}

}  // namespace asid::firmware
