#include "qgls/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace qgls::jout {

Value Value::object() { return Value(Kind::Object); }
Value Value::array() { return Value(Kind::Array); }
Value Value::number(double v) {
  Value out(Kind::Number);
  out.number_ = v;
  return out;
}
Value Value::integer(long long v) {
  Value out(Kind::Integer);
  out.integer_ = v;
  return out;
}
Value Value::string(std::string s) {
  Value out(Kind::String);
  out.string_ = std::move(s);
  return out;
}
Value Value::boolean(bool b) {
  Value out(Kind::Boolean);
  out.boolean_ = b;
  return out;
}

Value& Value::set(const std::string& key, Value v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}

Value& Value::push(Value v) {
  elements_.push_back(std::move(v));
  return *this;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
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
        out += c;
    }
  }
  out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
  if (indent < 0) return;
  out += '\n';
  out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

}  // namespace

void Value::write(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::Number:
      out += format_number(number_);
      return;
    case Kind::Integer:
      out += std::to_string(integer_);
      return;
    case Kind::String:
      write_escaped(out, string_);
      return;
    case Kind::Boolean:
      out += boolean_ ? "true" : "false";
      return;
    case Kind::Object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : members_) {
        if (!first) out += ',';
        first = false;
        newline_indent(out, indent, depth + 1);
        write_escaped(out, k);
        out += indent < 0 ? ":" : ": ";
        v.write(out, indent, depth + 1);
      }
      if (!first) newline_indent(out, indent, depth);
      out += '}';
      return;
    }
    case Kind::Array: {
      out += '[';
      bool first = true;
      for (const Value& v : elements_) {
        if (!first) out += ',';
        first = false;
        newline_indent(out, indent, depth + 1);
        v.write(out, indent, depth + 1);
      }
      if (!first) newline_indent(out, indent, depth);
      out += ']';
      return;
    }
  }
}

std::string Value::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  return out;
}

std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

}  // namespace qgls::jout
