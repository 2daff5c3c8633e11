#include "crossworld/keyval.hpp"

#include <cstdlib>
#include <sstream>

#include "crossworld/errors.hpp"

namespace crossworld {

KeyVals KeyVals::parse(const std::string& text) {
    KeyVals out;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InputError("config: expected key=value, got '" + token + "'");
        }
        out.items_[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return out;
}

bool KeyVals::has(const std::string& key) const { return items_.count(key) > 0; }

std::optional<std::string> KeyVals::get(const std::string& key) const {
    const auto it = items_.find(key);
    if (it == items_.end()) return std::nullopt;
    return it->second;
}

std::string KeyVals::get_string(const std::string& key, const std::string& fallback) const {
    const auto v = get(key);
    return v ? *v : fallback;
}

double KeyVals::get_double(const std::string& key) const {
    const auto v = get(key);
    if (!v) throw InputError("config: missing key '" + key + "'");
    char* end = nullptr;
    const double d = std::strtod(v->c_str(), &end);
    if (end == v->c_str() || *end != '\0') {
        throw InputError("config: key '" + key + "' has non-numeric value '" + *v + "'");
    }
    return d;
}

double KeyVals::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

void KeyVals::set(const std::string& key, const std::string& value) { items_[key] = value; }

std::string KeyVals::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : items_) {
        if (!first) out << ' ';
        out << k << '=' << v;
        first = false;
    }
    return out.str();
}

}  // namespace crossworld
