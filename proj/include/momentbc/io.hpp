#ifndef MOMENTBC_IO_HPP
#define MOMENTBC_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "momentbc/jacobi_sim.hpp"
#include "momentbc/measure.hpp"
#include "momentbc/numeric.hpp"

// File formats.  Inputs are JSON parsed leniently (numbers or "p/q" strings
// for scalars).  Outputs go through JsonWriter, which emits a fixed key
// order, scientific floats with 17 significant digits and rationals as
// canonical "p/q" strings, so identical inputs produce byte-identical files.
// Every output object carries "schema": "momentbc/1".

namespace momentbc::io {

inline constexpr const char* kSchema = "momentbc/1";

enum class Backend { f64, rational };

Backend parse_backend(const std::string& name);
const char* backend_name(Backend b);

// --- input ----------------------------------------------------------------

nlohmann::json load_json_file(const std::string& path);

double scalar_as_double(const nlohmann::json& v, const char* what);
Rational scalar_as_rational(const nlohmann::json& v, const char* what);

template <class T>
T parse_scalar(const nlohmann::json& v, const char* what) {
  if constexpr (scalar_traits<T>::is_exact)
    return scalar_as_rational(v, what);
  else
    return scalar_as_double(v, what);
}

template <class T>
std::vector<T> parse_sequence(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty())
    raise(ErrorCode::parse_error, std::string("input needs a nonempty array '") + key + "'");
  std::vector<T> out;
  out.reserve(doc[key].size());
  for (const auto& v : doc[key]) out.push_back(parse_scalar<T>(v, key));
  return out;
}

template <class T>
JacobiCoefficients<T> parse_jacobi_as(const nlohmann::json& doc) {
  JacobiCoefficients<T> j;
  j.a = parse_sequence<T>(doc, "a");
  j.b = parse_sequence<T>(doc, "b");
  j.validate();
  return j;
}

JacobiCoefficients<double> parse_jacobi(const nlohmann::json& doc);

// Command-line scalar: plain decimal or "p/q".
template <class T>
T parse_scalar_text(const std::string& text) {
  if constexpr (scalar_traits<T>::is_exact) {
    if (text.find('/') != std::string::npos) return parse_rational(text);
    // Accept decimals exactly: 1.25 -> 5/4.
    try {
      std::size_t used = 0;
      const double d = std::stod(text, &used);
      if (used != text.size()) raise(ErrorCode::parse_error, "trailing characters in '" + text + "'");
      return scalar_traits<Rational>::from_double(d);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      return parse_rational(text);  // integer strings land here
    }
  } else {
    try {
      std::size_t used = 0;
      const double d = std::stod(text, &used);
      if (used != text.size()) raise(ErrorCode::parse_error, "trailing characters in '" + text + "'");
      return d;
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      raise(ErrorCode::parse_error, "invalid number '" + text + "'");
    }
  }
}

// --- output ---------------------------------------------------------------

class JsonWriter {
 public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& name);
  void string_value(const std::string& s);
  void raw_number(const std::string& digits);
  void int_value(long long v);
  void bool_value(bool v);
  void double_value(double v);
  void rational_value(const Rational& v);

  template <class T>
  void scalar_value(const T& v) {
    if constexpr (scalar_traits<T>::is_exact)
      rational_value(v);
    else
      double_value(static_cast<double>(v));
  }

  template <class T>
  void sequence(const std::vector<T>& xs) {
    begin_array();
    for (const T& x : xs) scalar_value(x);
    end_array();
  }

  template <class T>
  void matrix(const Matrix<T>& m) {
    begin_array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      begin_array();
      for (std::size_t j = 0; j < m.cols(); ++j) scalar_value(m(i, j));
      end_array();
    }
    end_array();
  }

  const std::string& str() const { return out_; }

 private:
  void separator();
  std::string out_;
  std::vector<bool> needs_comma_;
  bool pending_key_ = false;
};

void write_text_file(const std::string& path, const std::string& content);

template <class T>
void emit_measure(JsonWriter& w, const DiscreteMeasure<T>& mu, Backend backend) {
  w.begin_object();
  w.key("schema");
  w.string_value(kSchema);
  w.key("kind");
  w.string_value("measure");
  w.key("backend");
  w.string_value(backend_name(backend));
  w.key("atoms");
  w.sequence(mu.atoms);
  w.key("weights");
  w.sequence(mu.weights);
  w.key("norming_constants");
  w.begin_array();
  for (std::size_t k = 0; k < mu.size(); ++k) w.scalar_value(mu.rho(k));
  w.end_array();
  w.end_object();
}

}  // namespace momentbc::io

#endif  // MOMENTBC_IO_HPP
