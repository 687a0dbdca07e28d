#include "hawkesim/io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace hawkesim {

std::string fmt_double(double x) {
  if (!std::isfinite(x)) return "null";  // reports only carry finite values
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void JsonWriter::raw(std::string_view s) { out_.append(s.data(), s.size()); }

void JsonWriter::item_prefix() {
  if (key_pending_) {
    key_pending_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) raw(",");
    first_.back() = false;
    raw("\n");
    out_.append(2 * first_.size(), ' ');
  }
}

JsonWriter& JsonWriter::begin_object() {
  item_prefix();
  raw("{");
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool empty = first_.back();
  first_.pop_back();
  if (!empty) {
    raw("\n");
    out_.append(2 * first_.size(), ' ');
  }
  raw("}");
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  item_prefix();
  raw("[");
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const bool empty = first_.back();
  first_.pop_back();
  if (!empty) {
    raw("\n");
    out_.append(2 * first_.size(), ' ');
  }
  raw("]");
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  item_prefix();
  raw("\"");
  for (char ch : k) {
    if (ch == '"' || ch == '\\') out_.push_back('\\');
    out_.push_back(ch);
  }
  raw("\": ");
  key_pending_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  item_prefix();
  raw(fmt_double(v));
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  item_prefix();
  raw(std::to_string(v));
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  item_prefix();
  raw(std::to_string(v));
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  item_prefix();
  raw(v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  item_prefix();
  raw("\"");
  for (char ch : v) {
    switch (ch) {
      case '"': raw("\\\""); break;
      case '\\': raw("\\\\"); break;
      case '\n': raw("\\n"); break;
      case '\t': raw("\\t"); break;
      case '\r': raw("\\r"); break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          raw(buf);
        } else {
          out_.push_back(ch);
        }
    }
  }
  raw("\"");
  return *this;
}

JsonWriter& JsonWriter::null() {
  item_prefix();
  raw("null");
  return *this;
}

std::string event_path_csv(const EventPath& path) {
  std::string out = "time\n";
  for (double t : path.times()) {
    out += fmt_double(t);
    out += '\n';
  }
  return out;
}

std::string marked_event_path_csv(const MarkedEventPath& path) {
  std::string out = "time,state,mark,cumulative\n";
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    out += fmt_double(path.times[i]);
    out += ',';
    out += std::to_string(path.states[i]);
    out += ',';
    out += fmt_double(path.marks[i]);
    out += ',';
    out += fmt_double(path.cumulative[i]);
    out += '\n';
  }
  return out;
}

std::string wealth_path_csv(const SampledPath& path) {
  std::string out = "step,time,wealth\n";
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += fmt_double(path.times[i]);
    out += ',';
    out += fmt_double(path.values[i]);
    out += '\n';
  }
  return out;
}

std::string surplus_path_csv(const SurplusPath& path) {
  std::string out = "step,time,surplus,ruined\n";
  for (std::size_t i = 0; i < path.times.size(); ++i) {
    const bool ruined_here = path.ruined && i + 1 == path.times.size();
    out += std::to_string(i);
    out += ',';
    out += fmt_double(path.times[i]);
    out += ',';
    out += fmt_double(path.values[i]);
    out += ',';
    out += ruined_here ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string iso_timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace hawkesim
