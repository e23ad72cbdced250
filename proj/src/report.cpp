#include "fluidlogic/report.hpp"

#include <charconv>
#include <sstream>

namespace fluidlogic {

std::string format_number(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string RunReport::to_json() const { return data.dump(2) + "\n"; }

namespace {

void render(const nlohmann::json& j, const std::string& key, int indent, std::ostream& out) {
    const std::string pad(static_cast<size_t>(indent), ' ');
    if (j.is_object()) {
        if (!key.empty()) out << pad << key << ":\n";
        for (auto it = j.begin(); it != j.end(); ++it)
            render(it.value(), it.key(), key.empty() ? indent : indent + 2, out);
        return;
    }
    if (j.is_array()) {
        if (!key.empty()) out << pad << key << ":\n";
        int idx = 0;
        for (const auto& item : j) render(item, "[" + std::to_string(idx++) + "]", indent + 2, out);
        return;
    }
    out << pad << key << " = ";
    if (j.is_number_float())
        out << format_number(j.get<double>());
    else if (j.is_string())
        out << j.get<std::string>();
    else
        out << j.dump();
    out << "\n";
}

}  // namespace

std::string RunReport::to_table() const {
    std::ostringstream out;
    render(data, "", 0, out);
    return out.str();
}

}  // namespace fluidlogic
