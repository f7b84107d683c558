#pragma once

#include <map>
#include <string>

#include "grushin/errors.hpp"

namespace grushin {

/// Flat key-value run configuration. Every valid key has a registered
/// default; unknown keys are hard errors so typos cannot silently fall
/// back to defaults.
class Config {
  public:
    static const std::map<std::string, std::string>& registry();

    Config();  // all defaults
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has_explicit(const std::string& key) const;

    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::string get_string(const std::string& key) const;

    /// Fully resolved key -> value map (defaults filled in).
    const std::map<std::string, std::string>& resolved() const {
        return values_;
    }

  private:
    std::map<std::string, std::string> values_;
    std::map<std::string, bool> explicit_;
};

}  // namespace grushin
