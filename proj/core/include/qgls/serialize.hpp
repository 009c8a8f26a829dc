#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qgls::jout {

/// Insertion-ordered JSON document builder with deterministic byte output:
/// finite doubles print with 17 significant digits, infinities as the
/// strings "inf"/"-inf" (JSON has no infinity literal).
class Value {
 public:
  static Value object();
  static Value array();
  static Value number(double v);
  static Value integer(long long v);
  static Value string(std::string s);
  static Value boolean(bool b);

  Value& set(const std::string& key, Value v);  // object member (in order)
  Value& push(Value v);                         // array element

  std::string dump(int indent = -1) const;

 private:
  enum class Kind { Object, Array, Number, Integer, String, Boolean };
  explicit Value(Kind kind) : kind_(kind) {}

  void write(std::string& out, int indent, int depth) const;

  Kind kind_;
  double number_ = 0.0;
  long long integer_ = 0;
  std::string string_;
  bool boolean_ = false;
  std::vector<std::pair<std::string, Value>> members_;
  std::vector<Value> elements_;
};

/// %.17g rendering used for JSON numbers.
std::string format_number(double v);

/// Shortest round-trip decimal rendering used for CSV cells.
std::string format_shortest(double v);

/// Minimal CSV assembly: header plus rows of preformatted cells.
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows);

}  // namespace qgls::jout
