#include "absim/report.hpp"

#include <cmath>
#include <cstdio>

namespace absim {

std::string json_escape(const std::string &s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"':
                out += "\\\"";
                break;
            case '\\':
                out += "\\\\";
                break;
            case '\n':
                out += "\\n";
                break;
            case '\t':
                out += "\\t";
                break;
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
    return out;
}

std::string JsonWriter::format_double(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (!need_comma_.empty()) {
        if (need_comma_.back()) {
            out_ += ',';
        }
        need_comma_.back() = true;
    }
}

JsonWriter &JsonWriter::begin_object() {
    comma();
    out_ += '{';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter &JsonWriter::end_object() {
    out_ += '}';
    need_comma_.pop_back();
    return *this;
}

JsonWriter &JsonWriter::begin_array() {
    comma();
    out_ += '[';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter &JsonWriter::end_array() {
    out_ += ']';
    need_comma_.pop_back();
    return *this;
}

JsonWriter &JsonWriter::key(const std::string &k) {
    comma();
    out_ += '"';
    out_ += json_escape(k);
    out_ += "\":";
    after_key_ = true;
    return *this;
}

JsonWriter &JsonWriter::value(double v) {
    comma();
    out_ += format_double(v);
    return *this;
}

JsonWriter &JsonWriter::value(long v) {
    comma();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter &JsonWriter::value(uint64_t v) {
    comma();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter &JsonWriter::value(int v) {
    comma();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter &JsonWriter::value(bool v) {
    comma();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter &JsonWriter::value(const std::string &v) {
    comma();
    out_ += '"';
    out_ += json_escape(v);
    out_ += '"';
    return *this;
}

JsonWriter &JsonWriter::null_value() {
    comma();
    out_ += "null";
    return *this;
}

}  // namespace absim
