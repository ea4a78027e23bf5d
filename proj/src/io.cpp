// Copyright 2026 The roughlift Authors
// SPDX-License-Identifier: Apache-2.0
#include "roughlift/io.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "roughlift/errors.hpp"

namespace roughlift {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, std::size_t col, const std::string& what) {
  std::string where = source + ":" + std::to_string(line);
  if (col > 0) where += ":" + std::to_string(col);
  throw ParseError(where + ": " + what);
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

SampledPath parse_path_csv(std::string_view text, const std::string& source) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;  // (1-based number, content)
  std::size_t pos = 0, number = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++number;
    if (!trim(line).empty()) lines.emplace_back(number, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) parse_fail(source, 1, 0, "empty input; expected header `t,x1,...,xd`");

  const auto [header_line, header_text] = lines.front();
  const std::vector<std::string_view> header = split_fields(header_text);
  if (header.size() < 2 || header[0] != "t")
    parse_fail(source, header_line, 1, "missing header: expected `t,x1,...,xd`, got `" + std::string(trim(header_text)) + "`");
  for (std::size_t c = 1; c < header.size(); ++c)
    if (header[c] != "x" + std::to_string(c))
      parse_fail(source, header_line, c + 1, "header column should be `x" + std::to_string(c) + "`, got `" +
                                                 std::string(header[c]) + "`");
  const std::size_t d = header.size() - 1;

  std::vector<double> times, values;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto [ln, content] = lines[r];
    const std::vector<std::string_view> f = split_fields(content);
    if (f.size() != d + 1)
      parse_fail(source, ln, 0, "expected " + std::to_string(d + 1) + " columns, got " + std::to_string(f.size()));
    for (std::size_t c = 0; c <= d; ++c) {
      double v = 0.0;
      if (!parse_double(f[c], v)) parse_fail(source, ln, c + 1, "not a finite number: `" + std::string(f[c]) + "`");
      if (c == 0) {
        if (!times.empty() && !(v > times.back()))
          parse_fail(source, ln, 1, "times must be strictly increasing");
        times.push_back(v);
      } else {
        values.push_back(v);
      }
    }
  }
  const std::size_t n = times.size();
  if (n < 2 || ((n - 1) & (n - 2)) != 0)
    parse_fail(source, lines.back().first, 0,
               "need 2^J + 1 rows on a dyadic grid, got " + std::to_string(n) + " data rows");
  const double span = times.back() - times.front();
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double expect = times.front() + span * static_cast<double>(k) / static_cast<double>(n - 1);
    if (std::abs(times[k] - expect) > 1e-9 * std::max(1.0, std::abs(span)))
      parse_fail(source, lines[k + 1].first, 1, "times are not equally spaced");
  }
  int depth = 0;
  while ((std::size_t{1} << depth) + 1 < n) ++depth;
  return SampledPath(static_cast<int>(d), depth, std::move(values));
}

SampledPath read_path_csv(const std::string& file) { return parse_path_csv(read_file(file), file); }

std::string path_csv(const SampledPath& x) {
  std::ostringstream os;
  os.precision(17);
  os << 't';
  for (int i = 1; i <= x.dim(); ++i) os << ",x" << i;
  os << '\n';
  for (std::size_t k = 0; k < x.size(); ++k) {
    os << x.time(k);
    for (int i = 0; i < x.dim(); ++i) os << ',' << x.at(k, i);
    os << '\n';
  }
  return os.str();
}

std::string group_path_json(const GroupPath& x, std::string_view metadata_json) {
  json j;
  j["dim"] = x.dim();
  j["level"] = x.level();
  j["depth"] = x.depth();
  json els = json::array();
  for (const GroupElement& g : x.elements()) {
    json row = json::array();
    for (int k = 1; k <= x.level(); ++k) {
      const auto span = g.level_span(k);
      for (std::size_t i = 0; i < span.size(); ++i) row.push_back(json::array({word_from_index(x.dim(), k, i), span[i]}));
    }
    els.push_back(std::move(row));
  }
  j["elements"] = std::move(els);
  json meta = parse_json(metadata_json, "metadata");
  if (!meta.is_object()) throw StructuralError("metadata must be a JSON object");
  j["metadata"] = std::move(meta);
  return j.dump() + "\n";
}

GroupPath parse_group_path_json(std::string_view text, std::string* metadata_json) {
  const json j = parse_json(text, "group path JSON");
  try {
    const int dim = j.at("dim").get<int>(), level = j.at("level").get<int>(), depth = j.at("depth").get<int>();
    if (dim < 1 || level < 1 || level > 3 || depth < 0 || depth > 24)
      throw ParseError("group path JSON: dim/level/depth out of range");
    const json& els = j.at("elements");
    if (!els.is_array() || els.size() != (std::size_t{1} << depth) + 1)
      throw ParseError("group path JSON: expected 2^depth + 1 elements");
    std::vector<GroupElement> out;
    out.reserve(els.size());
    for (std::size_t t = 0; t < els.size(); ++t) {
      TruncatedTensor tensor(dim, level);
      tensor.data()[0] = 1.0;
      std::vector<bool> seen(tensor.data().size(), false);
      for (const json& pair : els[t]) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("group path JSON: element " + std::to_string(t) + ": expected [word, coeff]");
        const Word w = pair[0].get<Word>();
        if (w.empty() || static_cast<int>(w.size()) > level)
          throw ParseError("group path JSON: element " + std::to_string(t) + ": word length outside 1..level");
        for (int letter : w)
          if (letter < 1 || letter > dim)
            throw ParseError("group path JSON: element " + std::to_string(t) + ": letter outside 1..dim");
        const std::size_t idx = level_offset(dim, static_cast<int>(w.size())) + word_index(dim, w);
        if (seen[idx]) throw ParseError("group path JSON: element " + std::to_string(t) + ": repeated word");
        seen[idx] = true;
        tensor.data()[idx] = pair[1].get<double>();
      }
      out.emplace_back(std::move(tensor));
    }
    if (metadata_json) *metadata_json = j.contains("metadata") ? j["metadata"].dump() : "{}";
    return GroupPath(dim, level, depth, std::move(out));
  } catch (const json::exception& e) {
    throw ParseError(std::string("group path JSON: ") + e.what());
  }
}

std::string norm_reports_json(const std::vector<NormReport>& reports) {
  json arr = json::array();
  for (const NormReport& r : reports)
    arr.push_back({{"norm_name", r.norm_name}, {"alpha", r.alpha}, {"p", r.p}, {"q", r.q},
                   {"depth", r.depth}, {"value", r.value}, {"per_scale", r.per_scale}});
  return arr.dump(2) + "\n";
}

std::string inhom_report_json(const InhomReport& r) {
  return json{{"value", r.value}, {"per_level", r.per_level}}.dump(2) + "\n";
}

std::string optimal_lift_report_json(const OptimalLift& r, double restarts_agreement) {
  json j{{"objective_initial", r.objective_initial},
         {"objective_final", r.objective_final},
         {"iterations", r.iterations},
         {"grad_norm", r.grad_norm}};
  j["restarts_agreement"] = restarts_agreement < 0.0 ? json(nullptr) : json(restarts_agreement);
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ParseError(file + ": cannot open for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::string& file, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(file);
  const fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError(file + ": cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ParseError(file + ": write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ParseError(file + ": rename failed");
  }
}

}  // namespace roughlift
