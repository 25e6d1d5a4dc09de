#include "momentbc/io.hpp"

#include <fstream>
#include <sstream>

namespace momentbc::io {

Backend parse_backend(const std::string& name) {
  if (name == "f64") return Backend::f64;
  if (name == "rational") return Backend::rational;
  raise(ErrorCode::invalid_argument, "unknown backend '" + name + "' (expected f64 or rational)");
}

const char* backend_name(Backend b) {
  return b == Backend::f64 ? "f64" : "rational";
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::parse_error, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse_error, "invalid JSON in '" + path + "': " + e.what());
  }
}

double scalar_as_double(const nlohmann::json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string())
    return scalar_traits<Rational>::to_double(parse_rational(v.get<std::string>()));
  raise(ErrorCode::parse_error, std::string(what) + " entries must be numbers or 'p/q' strings");
}

Rational scalar_as_rational(const nlohmann::json& v, const char* what) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number()) return scalar_traits<Rational>::from_double(v.get<double>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  raise(ErrorCode::parse_error, std::string(what) + " entries must be numbers or 'p/q' strings");
}

JacobiCoefficients<double> parse_jacobi(const nlohmann::json& doc) {
  return parse_jacobi_as<double>(doc);
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!needs_comma_.empty()) {
    if (needs_comma_.back()) out_ += ',';
    needs_comma_.back() = true;
  }
}

void JsonWriter::begin_object() {
  separator();
  out_ += '{';
  needs_comma_.push_back(false);
}

void JsonWriter::end_object() {
  needs_comma_.pop_back();
  out_ += '}';
}

void JsonWriter::begin_array() {
  separator();
  out_ += '[';
  needs_comma_.push_back(false);
}

void JsonWriter::end_array() {
  needs_comma_.pop_back();
  out_ += ']';
}

void JsonWriter::key(const std::string& name) {
  separator();
  out_ += '"';
  out_ += name;  // keys are fixed identifiers, no escaping needed
  out_ += "\":";
  pending_key_ = true;
}

void JsonWriter::string_value(const std::string& s) {
  separator();
  out_ += '"';
  for (char c : s) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += c;
        }
    }
  }
  out_ += '"';
}

void JsonWriter::raw_number(const std::string& digits) {
  separator();
  out_ += digits;
}

void JsonWriter::int_value(long long v) { raw_number(std::to_string(v)); }

void JsonWriter::bool_value(bool v) { raw_number(v ? "true" : "false"); }

void JsonWriter::double_value(double v) { raw_number(format_double(v)); }

void JsonWriter::rational_value(const Rational& v) { string_value(format_rational(v)); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::invalid_argument, "cannot write '" + path + "'");
  out << content;
  if (!out) raise(ErrorCode::invalid_argument, "write to '" + path + "' failed");
}

}  // namespace momentbc::io
