#include "helastic/config.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "helastic/curve_io.hpp"
#include "helastic/errors.hpp"

#ifndef HELASTIC_BUILD_INFO
#define HELASTIC_BUILD_INFO "unknown"
#endif

namespace helastic {

namespace {

class TomlLine {
public:
  TomlLine(std::string_view text, int line) : s_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ContractError("config line " + std::to_string(line_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string key() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a bare key");
    return std::string(s_.substr(start, pos_ - start));
  }

  nlohmann::json value() {
    const char c = peek();
    if (c == '"') return string();
    if (c == '[') return array();
    if (s_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (s_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return number();
  }

private:
  nlohmann::json string() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\') {
        if (++pos_ >= s_.size()) break;
        switch (s_[pos_]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail("unsupported escape");
        }
      } else {
        out += s_[pos_];
      }
      ++pos_;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  nlohmann::json array() {
    ++pos_;
    nlohmann::json arr = nlohmann::json::array();
    if (peek() == ']') {
      ++pos_;
      return arr;
    }
    for (;;) {
      arr.push_back(value());
      const char c = peek();
      ++pos_;
      if (c == ']') return arr;
      if (c != ',') fail("expected ',' or ']' in array");
      if (peek() == ']') {
        ++pos_;
        return arr;
      }
    }
  }

  nlohmann::json number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                s_[pos_] == '+' || s_[pos_] == '-' || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string tok(s_.substr(start, pos_ - start));
    std::erase(tok, '_');
    if (tok.empty()) fail("expected a value");
    const bool integral = tok.find_first_of(".eEni") == std::string::npos;
    const char* first = tok.data();
    if (*first == '+') ++first;
    const char* last = tok.data() + tok.size();
    if (integral) {
      long long v = 0;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec == std::errc{} && ptr == last) return v;
    } else {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec == std::errc{} && ptr == last) return v;
    }
    fail("cannot parse value '" + tok + "'");
  }

  std::string_view s_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

nlohmann::json parse_toml_subset(std::string_view text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = &root;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    TomlLine p(raw, line);
    if (p.at_end()) continue;
    if (p.peek() == '[') {
      p.expect('[');
      const std::string name = p.key();
      p.expect(']');
      if (!p.at_end()) p.fail("trailing characters after table header");
      if (root.contains(name)) p.fail("table [" + name + "] defined twice");
      root[name] = nlohmann::json::object();
      table = &root[name];
      continue;
    }
    const std::string k = p.key();
    p.expect('=');
    nlohmann::json v = p.value();
    if (!p.at_end()) p.fail("trailing characters after value");
    if (table->contains(k)) p.fail("duplicate key '" + k + "'");
    (*table)[k] = std::move(v);
  }
  return root;
}

nlohmann::json load_config_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  if (path.extension() == ".toml") return parse_toml_subset(text);
  try {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) throw ContractError("config: top level must be an object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ContractError(std::string("config: ") + e.what());
  }
}

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base) {
  if (!j.is_object()) throw ContractError("config: top level must be an object");
  if (j.contains("flow")) base.flow = flow_config_from_json(j.at("flow"), base.flow);
  if (j.contains("curve")) base.curve = curve_descriptor_from_json(j.at("curve"));
  if (j.contains("seed")) {
    try {
      base.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw ContractError(std::string("config: seed: ") + e.what());
    }
  }
  return base;
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"flow", to_json(c.flow)}, {"curve", to_json(c.curve)}, {"seed", c.seed}};
}

std::string_view tool_version() { return "0.1.0"; }
std::string_view build_info() { return HELASTIC_BUILD_INFO; }

}  // namespace helastic
