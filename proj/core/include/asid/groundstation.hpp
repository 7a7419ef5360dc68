#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "asid/civil_time.hpp"
#include "asid/wxindices.hpp"

namespace asid::groundstation {

struct PlotDocument {
  std::string name;  // file stem, e.g. "height_temperature"
  std::string svg;
  std::size_t points = 0;
};

/// Height/temperature, height/humidity and height/pressure plots, in that
/// order. Altitude runs up the vertical axis. DomainError for an empty profile.
std::vector<PlotDocument> render_plots(const wx::SoundingProfile& profile);

std::string render_text_report(const wx::WxReport& report, const wx::SoundingProfile& profile,
                               const DateTime& generated_at);

std::string render_json(const wx::WxReport& report, const wx::SoundingProfile& profile,
                        const DateTime& generated_at);

struct ParsedReport {
  wx::WxReport report;
  DateTime generated_at;
};

/// Inverse of render_json. ParseError on malformed input.
ParsedReport parse_json(std::string_view text);

struct ReportBundle {
  wx::WxReport report;
  wx::SoundingProfile profile;
  std::vector<PlotDocument> plots;  // empty when the profile has no levels
  std::vector<std::string> sources;
  DateTime generated_at;
  std::string text;
  std::string json;
};

ReportBundle make_bundle(const wx::SoundingProfile& profile, const DateTime& generated_at,
                         std::vector<std::string> sources = {});

/// Reads ground.csv and air.csv from `in_dir`. A missing air.csv counts as
/// empty; a missing ground.csv is a DomainError.
ReportBundle build_bundle_from_dir(const std::filesystem::path& in_dir,
                                   const DateTime& generated_at);

/// Writes report.txt, report.json and plots/<name>.svg under `out_dir`.
void write_bundle(const ReportBundle& bundle, const std::filesystem::path& out_dir);

}  // namespace asid::groundstation
