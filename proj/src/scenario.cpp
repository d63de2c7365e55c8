/*
 * Copyright 2026 The symplab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "symplab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "symplab/errors.hpp"
#include "symplab/hamdsl.hpp"

namespace symplab {

namespace {

[[noreturn]] void config_fail(int line, int column, const std::string& msg) { throw ConfigError(line, column, msg); }

[[noreturn]] void entry_fail(const Entry& e, const std::string& msg) {
  config_fail(e.line, e.value_column, "'" + e.key + "': " + msg);
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

enum class Type { Number, Integer, Bool, Word, Expr, Name, Names, Numbers };

struct KeySpec {
  const char* key;
  Type type;
  bool required;
};

using Schema = std::vector<KeySpec>;

const std::map<std::string, Schema>& section_schemas() {
  static const std::map<std::string, Schema> s = {
      {"scenario",
       {{"name", Type::Word, false},
        {"manifold", Type::Word, true},
        {"window", Type::Number, false},
        {"window_resolution", Type::Integer, false},
        {"seed", Type::Integer, false},
        {"step", Type::Number, false},
        {"max_iterations", Type::Integer, false}}},
      {"hamiltonian", {{"expr", Type::Expr, true}}},
      {"composite",
       {{"op", Type::Word, true},
        {"args", Type::Names, true},
        {"profile", Type::Word, false},
        {"amplitude", Type::Number, false},
        {"constant", Type::Number, false}}},
      {"family",
       {{"kind", Type::Word, false},
        {"expr", Type::Expr, false},
        {"base", Type::Name, false},
        {"profile", Type::Word, false},
        {"amplitude", Type::Number, false},
        {"shift_rate", Type::Number, false},
        {"size", Type::Integer, false}}},
      {"loop",
       {{"kind", Type::Word, true},
        {"generator", Type::Name, false},
        {"family", Type::Name, false},
        {"factors", Type::Names, false},
        {"lift", Type::Word, false},
        {"basepoint", Type::Numbers, false},
        {"base_area", Type::Number, false},
        {"sheet", Type::Integer, false},
        {"contraction", Type::Name, false}}},
  };
  return s;
}

const std::map<std::string, Schema>& task_schemas() {
  static const std::map<std::string, Schema> s = {
      {"spectrum",
       {{"hamiltonian", Type::Name, true},
        {"seeds", Type::Integer, false},
        {"samples", Type::Integer, false},
        {"allow_unnormalized", Type::Bool, false},
        {"expect", Type::Numbers, false},
        {"expect_generator", Type::Number, false},
        {"tolerance", Type::Number, false}}},
      {"monodromy",
       {{"loop", Type::Name, true},
        {"basepoints", Type::Integer, false},
        {"expect", Type::Number, false},
        {"tolerance", Type::Number, false}}},
      {"homomorphism",
       {{"loops", Type::Names, true},
        {"basepoints", Type::Integer, false},
        {"expect", Type::Number, false},
        {"tolerance", Type::Number, false}}},
      {"lemma23",
       {{"family", Type::Name, true},
        {"probes", Type::Integer, false},
        {"directions", Type::Integer, false},
        {"epsilon", Type::Number, false},
        {"expect", Type::Number, false},
        {"tolerance", Type::Number, false}}},
      {"theorem1",
       {{"family", Type::Name, true},
        {"seeds", Type::Integer, false},
        {"t_points", Type::Integer, false},
        {"allow_unnormalized", Type::Bool, false},
        {"expect_drift", Type::Number, false},
        {"tolerance", Type::Number, false}}},
      {"pde36",
       {{"family", Type::Name, true},
        {"t_points", Type::Integer, false},
        {"base", Type::Integer, false},
        {"expect_c", Type::Number, false},
        {"tolerance", Type::Number, false}}},
      {"liouville", {{"pairs", Type::Integer, false}, {"tolerance", Type::Number, false}}},
  };
  return s;
}

void check_words(const Entry& e, std::initializer_list<const char*> allowed) {
  for (const char* w : allowed)
    if (e.value == w) return;
  std::string list;
  for (const char* w : allowed) list += std::string(list.empty() ? "" : ", ") + w;
  entry_fail(e, "expected one of " + list + ", got '" + e.value + "'");
}

void check_type(const Entry& e, Type type) {
  if (type != Type::Expr && e.quoted) entry_fail(e, "unexpected quoted value");
  switch (type) {
    case Type::Number: entry_number(e); break;
    case Type::Integer: entry_integer(e); break;
    case Type::Bool: entry_bool(e); break;
    case Type::Word:
    case Type::Name:
      if (!is_identifier(e.value)) entry_fail(e, "expected a name, got '" + e.value + "'");
      break;
    case Type::Names:
      for (const auto& n : entry_list(e))
        if (!is_identifier(n)) entry_fail(e, "expected a list of names, got '" + n + "'");
      break;
    case Type::Numbers: {
      Entry tmp = e;
      for (const auto& n : entry_list(e)) {
        tmp.value = n;
        entry_number(tmp);
      }
      break;
    }
    case Type::Expr:
      if (!e.quoted) entry_fail(e, "expressions must be double-quoted");
      break;
  }
}

void check_schema(const Section& s, const Schema& schema) {
  std::set<std::string> seen;
  for (const Entry& e : s.entries) {
    const auto it = std::find_if(schema.begin(), schema.end(), [&](const KeySpec& k) { return e.key == k.key; });
    if (it == schema.end()) {
      if (s.kind == "task" && e.key == "kind") continue;
      config_fail(e.line, e.key_column, "unknown key '" + e.key + "' in [" + s.kind + "]");
    }
    if (!seen.insert(e.key).second) config_fail(e.line, e.key_column, "duplicate key '" + e.key + "'");
    check_type(e, it->type);
  }
  for (const KeySpec& k : schema)
    if (k.required && !s.find(k.key))
      config_fail(s.line, s.column, "[" + s.kind + (s.name.empty() ? "" : " " + s.name) + "] is missing '" +
                                        k.key + "'");
}

void check_expression(const Entry& e, const Manifold& m, const std::vector<std::string>& params) {
  const int base = e.value_column + 1;
  try {
    parse_expression(e.value, m, params);
  } catch (const ParseError& err) {
    config_fail(e.line, base + static_cast<int>(err.offset()), err.what());
  } catch (const BindError& err) {
    config_fail(e.line, base + static_cast<int>(err.offset()), err.what());
  } catch (const PeriodicityError& err) {
    config_fail(e.line, base + static_cast<int>(err.offset()), err.what());
  }
}

struct Parser {
  std::string_view text;
  Scenario sc;
  const Section* scenario_section = nullptr;
  Section scenario_storage;
  bool have_scenario = false;

  void parse_lines() {
    int line_no = 0;
    std::size_t pos = 0;
    Section* current = nullptr;
    while (pos <= text.size()) {
      const std::size_t eol = std::min(text.find('\n', pos), text.size());
      std::string_view raw = text.substr(pos, eol - pos);
      ++line_no;
      pos = eol + 1;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      // Strip a comment outside quotes.
      bool in_quote = false;
      std::size_t cut = raw.size();
      for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '"') in_quote = !in_quote;
        if (raw[i] == '#' && !in_quote) {
          cut = i;
          break;
        }
      }
      if (in_quote) config_fail(line_no, static_cast<int>(raw.find('"')) + 1, "unterminated string");
      const std::string_view body = raw.substr(0, cut);
      const std::string t = trim(body);
      if (t.empty()) {
        if (eol == text.size()) break;
        continue;
      }
      const int indent = static_cast<int>(body.find_first_not_of(" \t")) + 1;
      if (t.front() == '[') {
        if (t.back() != ']') config_fail(line_no, indent, "expected ']' to close the section header");
        const std::string inner = trim(std::string_view(t).substr(1, t.size() - 2));
        const std::size_t sp = inner.find_first_of(" \t");
        Section s;
        s.kind = inner.substr(0, sp);
        s.name = sp == std::string::npos ? "" : trim(std::string_view(inner).substr(sp));
        s.line = line_no;
        s.column = indent;
        static const std::set<std::string> kinds = {"scenario", "hamiltonian", "composite",
                                                    "family",   "loop",        "task"};
        if (!kinds.count(s.kind)) config_fail(line_no, indent + 1, "unknown section '" + s.kind + "'");
        if (s.kind == "scenario") {
          if (!s.name.empty()) config_fail(line_no, indent, "[scenario] takes no name");
          if (have_scenario) config_fail(line_no, indent, "duplicate [scenario] section");
          have_scenario = true;
          scenario_storage = s;
          current = &scenario_storage;
        } else {
          if (!is_identifier(s.name))
            config_fail(line_no, indent, "[" + s.kind + "] needs a name (letters, digits, '_', '-', '.')");
          sc.sections.push_back(s);
          current = &sc.sections.back();
        }
        if (eol == text.size()) break;
        continue;
      }
      const std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) config_fail(line_no, indent, "expected 'key = value' or '[section]'");
      if (!current) config_fail(line_no, indent, "key outside of any section");
      Entry e;
      e.key = trim(body.substr(0, eq));
      e.line = line_no;
      e.key_column = indent;
      if (!is_identifier(e.key)) config_fail(line_no, indent, "invalid key '" + e.key + "'");
      const std::string_view rest = body.substr(eq + 1);
      const std::size_t vstart = rest.find_first_not_of(" \t");
      if (vstart == std::string_view::npos) config_fail(line_no, static_cast<int>(eq) + 2, "missing value");
      e.value_column = static_cast<int>(eq + 1 + vstart) + 1;
      std::string v = trim(rest);
      if (v.front() == '"') {
        const std::size_t close = v.find('"', 1);
        if (close != v.size() - 1)
          config_fail(line_no, e.value_column + static_cast<int>(close) + 1, "unexpected text after string");
        e.quoted = true;
        v = v.substr(1, v.size() - 2);
      }
      e.value = v;
      current->entries.push_back(std::move(e));
      if (eol == text.size()) break;
    }
  }

  void read_settings() {
    if (!have_scenario) config_fail(1, 1, "missing [scenario] section");
    const Section& s = scenario_storage;
    check_schema(s, section_schemas().at("scenario"));
    ScenarioSettings& st = sc.settings;
    if (const Entry* e = s.find("name")) st.name = e->value;
    const Entry* m = s.find("manifold");
    check_words(*m, {"plane", "torus", "sphere"});
    st.manifold = m->value;
    if (const Entry* e = s.find("window")) {
      st.window = entry_number(*e);
      if (!(st.window > 0.0)) entry_fail(*e, "window must be positive");
    }
    if (const Entry* e = s.find("window_resolution")) {
      st.window_resolution = static_cast<int>(entry_integer(*e));
      if (st.window_resolution < 8) entry_fail(*e, "window_resolution must be at least 8");
    }
    if (const Entry* e = s.find("seed")) {
      const long long v = entry_integer(*e);
      if (v < 0) entry_fail(*e, "seed must be non-negative");
      st.seed = static_cast<std::uint64_t>(v);
    }
    if (const Entry* e = s.find("step")) {
      st.step = entry_number(*e);
      if (!(st.step > 0.0 && st.step <= 1.0)) entry_fail(*e, "step must lie in (0, 1]");
    }
    if (const Entry* e = s.find("max_iterations")) {
      st.max_iterations = static_cast<int>(entry_integer(*e));
      if (st.max_iterations < 1) entry_fail(*e, "max_iterations must be at least 1");
    }
  }

  // Namespaces: paths (hamiltonian + composite), family, loop, task.
  static std::string space(const std::string& kind) {
    return kind == "hamiltonian" || kind == "composite" ? "path" : kind;
  }

  const Section* lookup(const std::string& sp, const std::string& name) const {
    for (const Section& s : sc.sections)
      if (space(s.kind) == sp && s.name == name) return &s;
    return nullptr;
  }

  void require(const Entry& e, const std::string& sp, const std::string& name) const {
    if (!lookup(sp, name)) {
      const std::string what = sp == "path" ? "Hamiltonian" : sp;
      entry_fail(e, "undefined " + what + " '" + name + "'");
    }
  }

  void check_sections() {
    const Manifold m = sc.manifold();
    std::set<std::pair<std::string, std::string>> names;
    for (const Section& s : sc.sections) {
      if (!names.insert({space(s.kind), s.name}).second)
        config_fail(s.line, s.column, "duplicate definition of '" + s.name + "'");
    }
    for (const Section& s : sc.sections) {
      if (s.kind == "task") {
        const Entry* k = s.find("kind");
        if (!k) config_fail(s.line, s.column, "[task " + s.name + "] is missing 'kind'");
        const auto it = task_schemas().find(k->value);
        if (it == task_schemas().end())
          entry_fail(*k, "unknown task kind '" + k->value +
                             "' (spectrum, monodromy, homomorphism, lemma23, theorem1, pde36, liouville)");
        check_schema(s, it->second);
      } else {
        check_schema(s, section_schemas().at(s.kind));
      }

      if (s.kind == "hamiltonian") {
        check_expression(*s.find("expr"), m, {});
      } else if (s.kind == "composite") {
        const Entry& op = *s.find("op");
        check_words(op, {"sharp", "bar", "reparam", "normalize", "shift"});
        const Entry& args = *s.find("args");
        const auto list = entry_list(args);
        const std::size_t want = op.value == "sharp" ? 2 : 1;
        if (list.size() != want)
          entry_fail(args, "'" + op.value + "' takes " + std::to_string(want) + " argument(s)");
        for (const auto& a : list) require(args, "path", a);
        if (op.value == "reparam") {
          const Entry* p = s.find("profile");
          if (!p) config_fail(s.line, s.column, "reparam needs 'profile'");
          check_words(*p, {"sine", "reversed"});
          if (!s.find("amplitude")) config_fail(s.line, s.column, "reparam needs 'amplitude'");
        }
        if (op.value == "shift" && !s.find("constant")) config_fail(s.line, s.column, "shift needs 'constant'");
      } else if (s.kind == "family") {
        const Entry* k = s.find("kind");
        const std::string kind = k ? k->value : (s.find("expr") ? "expr" : "reparam");
        if (k) check_words(*k, {"expr", "reparam"});
        if (kind == "expr") {
          const Entry* e = s.find("expr");
          if (!e) config_fail(s.line, s.column, "expression family needs 'expr'");
          check_expression(*e, m, {"s"});
        } else {
          const Entry* b = s.find("base");
          if (!b) config_fail(s.line, s.column, "reparam family needs 'base'");
          require(*b, "path", b->value);
          if (const Entry* p = s.find("profile")) check_words(*p, {"sine", "reversed"});
        }
        if (const Entry* e = s.find("size")) {
          const long long n = entry_integer(*e);
          if (n < 5 || n % 2 == 0) entry_fail(*e, "size must be odd and at least 5");
        }
      } else if (s.kind == "loop") {
        const Entry& k = *s.find("kind");
        check_words(k, {"generator", "family", "product", "identity"});
        if (k.value == "generator") {
          const Entry* g = s.find("generator");
          if (!g) config_fail(s.line, s.column, "generator loop needs 'generator'");
          require(*g, "path", g->value);
          const Entry* lift = s.find("lift");
          const std::string mode = lift ? lift->value : "basepoint";
          if (lift) check_words(*lift, {"basepoint", "canonical"});
          if (mode == "basepoint") {
            const Entry* b = s.find("basepoint");
            if (!b) config_fail(s.line, s.column, "basepoint lift needs 'basepoint'");
            if (entry_list(*b).size() != 2) entry_fail(*b, "expected two coordinates");
          } else {
            const Entry* c = s.find("contraction");
            if (!c) config_fail(s.line, s.column, "canonical lift needs 'contraction'");
            require(*c, "family", c->value);
          }
        } else if (k.value == "family") {
          const Entry* f = s.find("family");
          if (!f) config_fail(s.line, s.column, "family loop needs 'family'");
          require(*f, "family", f->value);
        } else if (k.value == "product") {
          const Entry* f = s.find("factors");
          if (!f) config_fail(s.line, s.column, "product loop needs 'factors'");
          const auto list = entry_list(*f);
          if (list.size() != 2) entry_fail(*f, "expected two loops");
          for (const auto& a : list) require(*f, "loop", a);
        }
      } else if (s.kind == "task") {
        if (const Entry* e = s.find("hamiltonian")) require(*e, "path", e->value);
        if (const Entry* e = s.find("loop")) require(*e, "loop", e->value);
        if (const Entry* e = s.find("family")) require(*e, "family", e->value);
        if (const Entry* e = s.find("loops")) {
          const auto list = entry_list(*e);
          if (list.size() != 2) entry_fail(*e, "expected two loops");
          for (const auto& a : list) require(*e, "loop", a);
        }
      }
    }
  }

  std::vector<std::pair<const Section*, const Entry*>> edges(const Section& s) const {
    std::vector<std::pair<const Section*, const Entry*>> out;
    auto add = [&](const char* key, const std::string& sp) {
      if (const Entry* e = s.find(key))
        for (const auto& n : entry_list(*e))
          if (const Section* t = lookup(sp, n)) out.push_back({t, e});
    };
    if (s.kind == "composite") add("args", "path");
    if (s.kind == "loop") add("factors", "loop");
    return out;
  }

  void check_cycles() {
    std::map<const Section*, int> state;  // 1 on stack, 2 done
    std::vector<const Section*> stack;
    std::function<void(const Section*)> visit = [&](const Section* s) {
      state[s] = 1;
      stack.push_back(s);
      for (const auto& [t, e] : edges(*s)) {
        if (state[t] == 1) {
          std::string chain;
          const auto it = std::find(stack.begin(), stack.end(), t);
          for (auto j = it; j != stack.end(); ++j) chain += (*j)->name + " -> ";
          chain += t->name;
          config_fail(e->line, e->value_column, "cyclic definition: " + chain);
        }
        if (state[t] == 0) visit(t);
      }
      stack.pop_back();
      state[s] = 2;
    };
    for (const Section& s : sc.sections)
      if (state[&s] == 0) visit(&s);
  }
};

}  // namespace

const Entry* Section::find(std::string_view key) const {
  for (const Entry& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

Manifold Scenario::manifold() const {
  if (settings.manifold == "plane") return Manifold::plane(settings.window, settings.window_resolution);
  if (settings.manifold == "sphere") return Manifold::sphere();
  return Manifold::torus();
}

const Section* Scenario::find(std::string_view kind, std::string_view name) const {
  for (const Section& s : sections)
    if (s.kind == kind && s.name == name) return &s;
  return nullptr;
}

std::vector<const Section*> Scenario::tasks() const {
  std::vector<const Section*> out;
  for (const Section& s : sections)
    if (s.kind == "task") out.push_back(&s);
  return out;
}

double entry_number(const Entry& e) {
  try {
    const double v = eval_constant(e.value);
    if (!std::isfinite(v)) entry_fail(e, "value is not finite");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    entry_fail(e, std::string("expected a number: ") + err.what());
  }
}

long long entry_integer(const Entry& e) {
  long long v = 0;
  std::istringstream in(e.value);
  if (!(in >> v) || !(in >> std::ws).eof()) entry_fail(e, "expected an integer, got '" + e.value + "'");
  return v;
}

bool entry_bool(const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  entry_fail(e, "expected true or false, got '" + e.value + "'");
}

std::vector<std::string> entry_list(const Entry& e) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= e.value.size()) {
    const std::size_t comma = std::min(e.value.find(',', pos), e.value.size());
    out.push_back(trim(std::string_view(e.value).substr(pos, comma - pos)));
    if (out.back().empty()) entry_fail(e, "empty list element");
    pos = comma + 1;
    if (comma == e.value.size()) break;
  }
  return out;
}

Scenario parse_scenario(std::string_view text, std::string path) {
  Parser p;
  p.text = text;
  p.sc.path = std::move(path);
  p.sc.text = std::string(text);
  p.parse_lines();
  p.read_settings();
  p.check_sections();
  p.check_cycles();
  return std::move(p.sc);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, 0, "cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace symplab
