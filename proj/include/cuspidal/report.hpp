#pragma once

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cuspidal {

// Minimal ordered JSON value. Reports must serialize byte-identically across
// runs with the same inputs, so insertion order is preserved and reals are
// printed with a fixed 12-significant-digit format.
class Json {
public:
    using Array = std::vector<Json>;
    using Object = std::vector<std::pair<std::string, Json>>;

    Json() : v_(nullptr) {}
    Json(std::nullptr_t) : v_(nullptr) {}
    Json(bool b) : v_(b) {}
    Json(int i) : v_(static_cast<long long>(i)) {}
    Json(long long i) : v_(i) {}
    Json(size_t i) : v_(static_cast<long long>(i)) {}
    Json(double d) : v_(d) {}
    Json(const char* s) : v_(std::string(s)) {}
    Json(std::string s) : v_(std::move(s)) {}
    Json(Array a) : v_(std::move(a)) {}
    Json(Object o) : v_(std::move(o)) {}

    static Json object() { return Json(Object{}); }
    static Json array() { return Json(Array{}); }

    Json& set(const std::string& key, Json value) {
        auto& obj = std::get<Object>(v_);
        obj.emplace_back(key, std::move(value));
        return *this;
    }
    Json& push(Json value) {
        std::get<Array>(v_).push_back(std::move(value));
        return *this;
    }
    bool is_object() const { return std::holds_alternative<Object>(v_); }

    static std::string format_real(double d) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", d);
        std::string s(buf);
        if (s == "inf") return "1e999";
        if (s == "-inf") return "-1e999";
        if (s == "nan" || s == "-nan") return "null";
        return s;
    }

    void dump(std::string& out, int indent = 0) const {
        struct V {
            std::string& out;
            int indent;
            void pad(int n) const { out.append(static_cast<size_t>(2 * n), ' '); }
            void operator()(std::nullptr_t) const { out += "null"; }
            void operator()(bool b) const { out += b ? "true" : "false"; }
            void operator()(long long i) const { out += std::to_string(i); }
            void operator()(double d) const { out += format_real(d); }
            void operator()(const std::string& s) const {
                out += '"';
                for (char c : s) {
                    switch (c) {
                        case '"': out += "\\\""; break;
                        case '\\': out += "\\\\"; break;
                        case '\n': out += "\\n"; break;
                        case '\t': out += "\\t"; break;
                        default: out += c;
                    }
                }
                out += '"';
            }
            void operator()(const Array& a) const {
                if (a.empty()) { out += "[]"; return; }
                out += "[\n";
                for (size_t i = 0; i < a.size(); ++i) {
                    pad(indent + 1);
                    a[i].dump(out, indent + 1);
                    if (i + 1 < a.size()) out += ',';
                    out += '\n';
                }
                pad(indent);
                out += ']';
            }
            void operator()(const Object& o) const {
                if (o.empty()) { out += "{}"; return; }
                out += "{\n";
                for (size_t i = 0; i < o.size(); ++i) {
                    pad(indent + 1);
                    (*this)(o[i].first);
                    out += ": ";
                    o[i].second.dump(out, indent + 1);
                    if (i + 1 < o.size()) out += ',';
                    out += '\n';
                }
                pad(indent);
                out += '}';
            }
        };
        std::visit(V{out, indent}, v_);
    }

    std::string dump() const {
        std::string out;
        dump(out);
        out += '\n';
        return out;
    }

    const std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object>& raw() const {
        return v_;
    }

private:
    std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> v_;
};

// A machine-readable run report: command, echoed parameters, typed records,
// and reproducibility metadata. Wall-clock time is deliberately excluded
// unless the caller injects a stamp, so identical runs serialize identically.
struct Report {
    std::string command;
    Json parameters = Json::object();
    std::vector<std::pair<std::string, Json>> record_groups; // (record type, array of objects)
    Json metadata = Json::object();

    Json& records(const std::string& type) {
        for (auto& [name, arr] : record_groups)
            if (name == type) return arr;
        record_groups.emplace_back(type, Json::array());
        return record_groups.back().second;
    }

    Json to_json() const {
        Json root = Json::object();
        root.set("command", command);
        root.set("parameters", parameters);
        Json recs = Json::object();
        for (const auto& [name, arr] : record_groups) recs.set(name, arr);
        root.set("records", recs);
        root.set("metadata", metadata);
        return root;
    }

    // One CSV table per record type; columns follow the field order of the
    // first record of the type.
    std::string to_csv(const std::string& type) const {
        for (const auto& [name, arr] : record_groups) {
            if (name != type) continue;
            const auto& rows = std::get<Json::Array>(arr.raw());
            if (rows.empty()) return "";
            std::string out;
            const auto& head = std::get<Json::Object>(rows.front().raw());
            for (size_t i = 0; i < head.size(); ++i) {
                out += head[i].first;
                out += i + 1 < head.size() ? ',' : '\n';
            }
            for (const auto& row : rows) {
                const auto& obj = std::get<Json::Object>(row.raw());
                for (size_t i = 0; i < obj.size(); ++i) {
                    std::string cell;
                    obj[i].second.dump(cell);
                    if (!cell.empty() && cell.front() == '"') cell = cell.substr(1, cell.size() - 2);
                    out += cell;
                    out += i + 1 < obj.size() ? ',' : '\n';
                }
            }
            return out;
        }
        return "";
    }
};

} // namespace cuspidal
