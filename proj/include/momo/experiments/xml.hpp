#pragma once

#include <expat.h>

#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "momo/core/error.hpp"

namespace momo::xml {

struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;
  std::string text;
  std::size_t line = 0;

  std::optional<std::string> attribute(std::string const& key) const {
    for (auto const& [k, v] : attributes) {
      if (k == key) return v;
    }
    return std::nullopt;
  }

  Node& add(std::string child_name) {
    children.push_back(Node{std::move(child_name), {}, {}, {}, 0});
    return children.back();
  }

  Node& set(std::string key, std::string value) {
    for (auto& [k, v] : attributes) {
      if (k == key) {
        v = std::move(value);
        return *this;
      }
    }
    attributes.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

namespace detail {

struct ParseState {
  XML_Parser parser = nullptr;
  std::vector<Node*> stack;
  std::unique_ptr<Node> root;
};

inline void on_start(void* data, XML_Char const* name, XML_Char const** attrs) {
  auto* st = static_cast<ParseState*>(data);
  Node node;
  node.name = name;
  node.line = XML_GetCurrentLineNumber(st->parser);
  for (std::size_t i = 0; attrs[i]; i += 2) node.attributes.emplace_back(attrs[i], attrs[i + 1]);
  if (st->stack.empty()) {
    st->root = std::make_unique<Node>(std::move(node));
    st->stack.push_back(st->root.get());
  } else {
    auto& parent = *st->stack.back();
    parent.children.push_back(std::move(node));
    st->stack.push_back(&parent.children.back());
  }
}

inline void on_end(void* data, XML_Char const*) { static_cast<ParseState*>(data)->stack.pop_back(); }

inline void on_text(void* data, XML_Char const* s, int len) {
  auto* st = static_cast<ParseState*>(data);
  if (!st->stack.empty()) st->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

inline std::string escape(std::string const& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

inline void write(std::ostream& os, Node const& n, int depth) {
  std::string const pad(static_cast<std::size_t>(depth) * 2, ' ');
  os << pad << '<' << n.name;
  for (auto const& [k, v] : n.attributes) os << ' ' << k << "=\"" << escape(v) << '"';
  if (n.children.empty() && n.text.empty()) {
    os << "/>\n";
    return;
  }
  os << '>';
  if (n.children.empty()) {
    os << escape(n.text) << "</" << n.name << ">\n";
    return;
  }
  os << '\n';
  for (auto const& c : n.children) write(os, c, depth + 1);
  os << pad << "</" << n.name << ">\n";
}

} // namespace detail

// Parses a document; `source` prefixes error messages. Malformed input raises
// ConfigError carrying the offending line.
inline Node parse(std::string const& text, std::string const& source = "<input>") {
  detail::ParseState st;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(XML_ParserCreate(nullptr),
                                                                                        &XML_ParserFree);
  if (!parser) throw Error("cannot create XML parser");
  st.parser = parser.get();
  XML_SetUserData(st.parser, &st);
  XML_SetElementHandler(st.parser, &detail::on_start, &detail::on_end);
  XML_SetCharacterDataHandler(st.parser, &detail::on_text);
  if (XML_Parse(st.parser, text.data(), static_cast<int>(text.size()), 1) == XML_STATUS_ERROR) {
    auto const line = XML_GetCurrentLineNumber(st.parser);
    throw ConfigError(source + ": malformed XML: " + XML_ErrorString(XML_GetErrorCode(st.parser)), line);
  }
  if (!st.root) throw ConfigError(source + ": empty document", 1);
  return std::move(*st.root);
}

inline Node parse_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

inline std::string to_string(Node const& root) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  detail::write(os, root, 0);
  return os.str();
}

} // namespace momo::xml
