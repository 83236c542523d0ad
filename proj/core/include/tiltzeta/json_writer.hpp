#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tiltzeta {

/// %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// Minimal streaming JSON emitter with 2-space indentation. Doubles are
/// written with 17 significant digits; non-finite doubles become null.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);

    JsonWriter& value(double v);
    JsonWriter& value(long v);
    JsonWriter& value(int v) { return value(static_cast<long>(v)); }
    JsonWriter& value(std::size_t v) { return value(static_cast<long>(v)); }
    JsonWriter& value(bool v);
    JsonWriter& value(std::string_view v);
    JsonWriter& value(const char* v) { return value(std::string_view(v)); }
    JsonWriter& null();

    JsonWriter& value(const std::vector<double>& v);

    template <class V>
    JsonWriter& field(std::string_view k, const V& v) {
        key(k);
        return value(v);
    }

    /// The document, terminated by a newline.
    std::string str() const { return out_ + "\n"; }

private:
    void before_value();
    void newline();
    JsonWriter& close(char bracket);

    struct Level {
        bool is_object;
        bool empty;
    };
    std::string out_;
    std::vector<Level> stack_;
    bool after_key_ = false;
};

std::string json_escape(std::string_view s);

}  // namespace tiltzeta
