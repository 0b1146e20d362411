#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace absim {

/// Hand-rolled JSON emitter: insertion-ordered keys and every number printed
/// with 17 significant digits, so identical runs serialize byte-identically.
class JsonWriter {
  public:
    JsonWriter &begin_object();
    JsonWriter &end_object();
    JsonWriter &begin_array();
    JsonWriter &end_array();
    JsonWriter &key(const std::string &k);
    JsonWriter &value(double v);
    JsonWriter &value(long v);
    JsonWriter &value(uint64_t v);
    JsonWriter &value(int v);
    JsonWriter &value(bool v);
    JsonWriter &value(const std::string &v);
    JsonWriter &null_value();

    const std::string &str() const {
        return out_;
    }

    static std::string format_double(double v);

  private:
    void comma();
    std::string out_;
    std::vector<bool> need_comma_;
    bool after_key_ = false;
};

std::string json_escape(const std::string &s);

}  // namespace absim
