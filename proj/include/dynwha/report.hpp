#pragma once

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

namespace dynwha {

/// One verification item. `witness` is empty on pass and holds a dump of the
/// offending instance otherwise.
struct CheckResult {
  std::string check;
  std::string instance;
  bool pass = false;
  std::string witness;
  long millis = 0;
};

struct Report {
  std::vector<CheckResult> items;

  void add(CheckResult r) { items.push_back(std::move(r)); }
  void add(const std::string& check, const std::string& instance, bool pass,
           const std::string& witness = "", long millis = 0) {
    items.push_back(CheckResult{check, instance, pass, pass ? "" : witness, millis});
  }
  void merge(const Report& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
  }
  bool all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const CheckResult& c) { return c.pass; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(items.begin(), items.end(), [](const CheckResult& c) { return !c.pass; }));
  }
  /// Canonical order: by check id, then instance, then witness. Timing is not
  /// part of the comparison canon.
  void normalize() {
    std::stable_sort(items.begin(), items.end(), [](const CheckResult& a, const CheckResult& b) {
      if (a.check != b.check) return a.check < b.check;
      if (a.instance != b.instance) return a.instance < b.instance;
      return a.witness < b.witness;
    });
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace dynwha
