#pragma once

#include <map>
#include <optional>
#include <string>

namespace crossworld {

/// Flat `key=value` config text, whitespace separated:
/// `mu0=1.0 mu1=1.0 sigma0=1.0 sigma1=1.0 rho=0.5 p1=0.5`.
class KeyVals {
  public:
    KeyVals() = default;
    static KeyVals parse(const std::string& text);

    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;  // throws InputError if missing/bad
    double get_double(const std::string& key, double fallback) const;

    void set(const std::string& key, const std::string& value);
    std::string to_string() const;
    const std::map<std::string, std::string>& items() const { return items_; }

  private:
    std::map<std::string, std::string> items_;
};

}  // namespace crossworld
