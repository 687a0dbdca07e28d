#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hawkesim/gchp.hpp"
#include "hawkesim/merton_insurance.hpp"

namespace hawkesim {

// %.17g rendering used for every number this library writes; round-trips
// doubles exactly and keeps repeated runs byte-identical.
std::string fmt_double(double x);

// Minimal streaming JSON writer with stable key order and 2-space indent.
// Output depends only on the call sequence, so identical inputs give
// byte-identical documents.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  // keeps string literals away from the bool overload
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null();
  const std::string& str() const { return out_; }

 private:
  void item_prefix();
  void raw(std::string_view s);
  std::string out_;
  std::vector<bool> first_;
  bool key_pending_ = false;
};

// CSV renderings of the path types. Header first, '\n' line ends, %.17g.
std::string event_path_csv(const EventPath& path);                       // time
std::string marked_event_path_csv(const MarkedEventPath& path);          // time,state,mark,cumulative
std::string wealth_path_csv(const SampledPath& path);                    // step,time,wealth
std::string surplus_path_csv(const SurplusPath& path);                   // step,time,surplus,ruined

// UTC wall-clock in ISO 8601; excluded from determinism comparisons.
std::string iso_timestamp_utc();

void write_text_file(const std::string& path, const std::string& content);

}  // namespace hawkesim
