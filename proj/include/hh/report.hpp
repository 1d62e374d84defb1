#pragma once

// Minimal ordered JSON document used for reports. Numbers are written with
// 17 significant digits so that every double round-trips exactly and two
// runs with the same seed produce byte-identical output.

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hh {

class JsonValue;
using JsonArray = std::vector<JsonValue>;
using JsonObject = std::vector<std::pair<std::string, JsonValue>>;  // insertion order kept

class JsonValue {
public:
    JsonValue() : v_(nullptr) {}
    JsonValue(std::nullptr_t) : v_(nullptr) {}
    JsonValue(bool b) : v_(b) {}
    JsonValue(double d) : v_(d) {}
    JsonValue(int i) : v_(static_cast<double>(i)) {}
    JsonValue(long l) : v_(static_cast<double>(l)) {}
    JsonValue(unsigned long long u) : v_(static_cast<double>(u)) {}
    JsonValue(const char* s) : v_(std::string(s)) {}
    JsonValue(std::string s) : v_(std::move(s)) {}
    JsonValue(JsonArray a) : v_(std::move(a)) {}
    JsonValue(JsonObject o) : v_(std::move(o)) {}

    bool is_object() const { return std::holds_alternative<JsonObject>(v_); }

    // object helper: append a key/value pair
    JsonValue& set(const std::string& key, JsonValue value) {
        std::get<JsonObject>(v_).emplace_back(key, std::move(value));
        return *this;
    }

    void dump(std::string& out) const {
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, std::nullptr_t>) {
                    out += "null";
                } else if constexpr (std::is_same_v<T, bool>) {
                    out += x ? "true" : "false";
                } else if constexpr (std::is_same_v<T, double>) {
                    char buf[40];
                    std::snprintf(buf, sizeof(buf), "%.17g", x);
                    out += buf;
                } else if constexpr (std::is_same_v<T, std::string>) {
                    dump_string(x, out);
                } else if constexpr (std::is_same_v<T, JsonArray>) {
                    out += '[';
                    for (std::size_t i = 0; i < x.size(); ++i) {
                        if (i) out += ',';
                        x[i].dump(out);
                    }
                    out += ']';
                } else {
                    out += '{';
                    for (std::size_t i = 0; i < x.size(); ++i) {
                        if (i) out += ',';
                        dump_string(x[i].first, out);
                        out += ':';
                        x[i].second.dump(out);
                    }
                    out += '}';
                }
            },
            v_);
    }

    std::string dump() const {
        std::string out;
        dump(out);
        return out;
    }

private:
    static void dump_string(const std::string& s, std::string& out) {
        out += '"';
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out += buf;
                    } else {
                        out += c;
                    }
            }
        }
        out += '"';
    }

    std::variant<std::nullptr_t, bool, double, std::string, JsonArray, JsonObject> v_;
};

inline JsonValue json_object() { return JsonValue(JsonObject{}); }

}  // namespace hh
