#pragma once

#include <string>
#include <vector>

namespace omni2 {

/// A single named identity check, with a witness when it failed.
struct CheckItem {
  std::string name;
  bool ok = true;
  std::string witness; // empty when ok; otherwise the inputs/values that break the identity
};

/// Aggregate of named checks; ok iff every item passed.
struct CheckReport {
  bool ok = true;
  std::vector<CheckItem> items;

  void pass(const std::string& name) { items.push_back({name, true, {}}); }
  void fail(const std::string& name, const std::string& witness) {
    items.push_back({name, false, witness});
    ok = false;
  }
  void record(const std::string& name, bool good, const std::string& witness) {
    if (good)
      pass(name);
    else
      fail(name, witness);
  }
  void merge(const CheckReport& o) {
    ok = ok && o.ok;
    items.insert(items.end(), o.items.begin(), o.items.end());
  }
  const CheckItem* first_failure() const {
    for (const auto& it : items)
      if (!it.ok) return &it;
    return nullptr;
  }
  std::string summary() const {
    if (ok) return "ok";
    const auto* f = first_failure();
    return f->name + ": " + f->witness;
  }
};

} // namespace omni2
