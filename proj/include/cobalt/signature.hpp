// signature.hpp: ordered mapping of variables onto alphabet tracks

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cobalt {

/// First-order names start lowercase, second-order names start uppercase.
inline bool is_fo_name(const std::string& name) {
  return !name.empty() && name[0] >= 'a' && name[0] <= 'z';
}
inline bool is_so_name(const std::string& name) {
  return !name.empty() && name[0] >= 'A' && name[0] <= 'Z';
}

/// Ordered naming of variables onto bit tracks. First-order variables
/// occupy tracks 0..n-1, second-order variables tracks n..n+m-1.
struct TrackSignature {
  std::vector<std::string> fo_vars;
  std::vector<std::string> so_vars;

  std::size_t fo_count() const { return fo_vars.size(); }
  std::size_t so_count() const { return so_vars.size(); }
  std::size_t width() const { return fo_vars.size() + so_vars.size(); }

  std::optional<std::size_t> track_of(const std::string& name) const {
    for (std::size_t i = 0; i < fo_vars.size(); ++i)
      if (fo_vars[i] == name) return i;
    for (std::size_t j = 0; j < so_vars.size(); ++j)
      if (so_vars[j] == name) return fo_vars.size() + j;
    return std::nullopt;
  }

  bool is_fo_track(std::size_t t) const { return t < fo_vars.size(); }

  const std::string& track_name(std::size_t t) const {
    if (t < fo_vars.size()) return fo_vars[t];
    return so_vars.at(t - fo_vars.size());
  }

  /// Appends a variable of the kind implied by its name; rejects duplicates.
  void add_var(const std::string& name) {
    if (track_of(name))
      throw std::invalid_argument("duplicate track name: " + name);
    if (is_fo_name(name))
      fo_vars.push_back(name);
    else if (is_so_name(name))
      so_vars.push_back(name);
    else
      throw std::invalid_argument("bad variable name: " + name);
  }

  /// Removes the track at index t (used by projection).
  void erase_track(std::size_t t) {
    if (t < fo_vars.size())
      fo_vars.erase(fo_vars.begin() + static_cast<long>(t));
    else if (t < width())
      so_vars.erase(so_vars.begin() + static_cast<long>(t - fo_vars.size()));
    else
      throw std::out_of_range("track index out of range");
  }

  bool operator==(const TrackSignature&) const = default;
};

} // namespace cobalt
