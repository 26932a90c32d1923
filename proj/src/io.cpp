#include "wmp/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

namespace wmp {

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error("line " + std::to_string(line) + ": " + msg);
}

void check_name(int line, const std::string& name) {
  if (name.empty() || name[0] == '~' || name[0] == '^')
    fail(line, "invalid vertex name '" + name + "'");
  for (char c : name)
    if (c == ',' || c == '|' || c == '=') fail(line, "invalid vertex name '" + name + "'");
}

Mdp finish(Mdp m) {
  auto problems = validate(m);
  if (!problems.empty()) {
    std::string msg = "validation failed:";
    for (const auto& p : problems) msg += " " + p + ";";
    msg.pop_back();
    throw Error(msg);
  }
  return m;
}

Mdp parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  Mdp m;
  try {
    for (const auto& v : doc.at("vertices")) {
      std::string owner = v.at("owner").get<std::string>();
      if (owner != "p1" && owner != "prob") throw Error("unknown owner '" + owner + "'");
      m.add_vertex(v.at("name").get<std::string>(), owner == "p1" ? Owner::Player : Owner::Random);
    }
    for (const auto& e : doc.at("edges")) {
      int src = m.vertex_named(e.at("from").get<std::string>());
      int dst = m.vertex_named(e.at("to").get<std::string>());
      Rational prob(0);
      if (e.contains("prob")) {
        if (!m.is_random(src)) throw Error("probability on edge leaving player vertex " + m.name(src));
        prob = parse_rational(e.at("prob").get<std::string>());
      } else if (m.is_random(src)) {
        throw Error("missing probability on edge leaving " + m.name(src));
      }
      m.add_edge(src, dst, parse_rational(e.at("payoff").get<std::string>()), prob);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad MDP document: ") + e.what());
  }
  return finish(std::move(m));
}

}  // namespace

Mdp parse_mdp(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);

  Mdp m;
  bool header = false;
  int lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto words = split_words(raw);
    if (words.empty()) continue;
    if (!header) {
      if (words.size() != 2 || words[0] != "mdp" || words[1] != "v1") fail(lineno, "expected header 'mdp v1'");
      header = true;
      continue;
    }
    try {
      if (words[0] == "vertex") {
        if (words.size() != 3) fail(lineno, "expected 'vertex <name> p1|prob'");
        check_name(lineno, words[1]);
        if (words[2] != "p1" && words[2] != "prob") fail(lineno, "unknown owner '" + words[2] + "'");
        m.add_vertex(words[1], words[2] == "p1" ? Owner::Player : Owner::Random);
      } else if (words[0] == "edge") {
        if (words.size() < 4 || words.size() > 5) fail(lineno, "expected 'edge <from> <to> payoff=<rat> [prob=<rat>]'");
        auto src = m.find_vertex(words[1]);
        auto dst = m.find_vertex(words[2]);
        if (!src) fail(lineno, "unknown vertex '" + words[1] + "'");
        if (!dst) fail(lineno, "unknown vertex '" + words[2] + "'");
        std::optional<Rational> payoff, prob;
        for (std::size_t i = 3; i < words.size(); ++i) {
          auto eq = words[i].find('=');
          if (eq == std::string::npos) fail(lineno, "expected key=value, got '" + words[i] + "'");
          std::string key = words[i].substr(0, eq);
          Rational value = parse_rational(std::string_view(words[i]).substr(eq + 1));
          if (key == "payoff" && !payoff) payoff = value;
          else if (key == "prob" && !prob) prob = value;
          else fail(lineno, "unexpected field '" + key + "'");
        }
        if (!payoff) fail(lineno, "edge without payoff");
        if (m.is_random(*src) && !prob) fail(lineno, "edge leaving probabilistic vertex needs prob=");
        if (!m.is_random(*src) && prob) fail(lineno, "edge leaving player vertex cannot carry prob=");
        m.add_edge(*src, *dst, *payoff, prob.value_or(Rational(0)));
      } else {
        fail(lineno, "unknown record '" + words[0] + "'");
      }
    } catch (const Error& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      fail(lineno, msg);
    }
  }
  if (!header) fail(lineno == 0 ? 1 : lineno, "expected header 'mdp v1'");
  return finish(std::move(m));
}

Mdp parse_mdp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_mdp(buf.str());
}

std::string write_mdp(const Mdp& m) {
  std::string out = "mdp v1\n";
  for (int v = 0; v < m.num_vertices(); ++v)
    out += "vertex " + m.name(v) + (m.is_random(v) ? " prob\n" : " p1\n");
  for (const auto& e : m.edges()) {
    out += "edge " + m.name(e.src) + " " + m.name(e.dst) + " payoff=" + to_string(e.payoff);
    if (m.is_random(e.src)) out += " prob=" + to_string(e.prob);
    out += "\n";
  }
  return out;
}

std::string write_mdp_json(const Mdp& m) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  doc["edges"] = nlohmann::json::array();
  for (int v = 0; v < m.num_vertices(); ++v)
    doc["vertices"].push_back({{"name", m.name(v)}, {"owner", m.is_random(v) ? "prob" : "p1"}});
  for (const auto& e : m.edges()) {
    nlohmann::json rec{{"from", m.name(e.src)}, {"to", m.name(e.dst)}, {"payoff", to_string(e.payoff)}};
    if (m.is_random(e.src)) rec["prob"] = to_string(e.prob);
    doc["edges"].push_back(rec);
  }
  return doc.dump(2);
}

Lasso parse_lasso(const Mdp& m, std::string_view text) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos) throw Error("lasso must have the form 'stem|cycle'");
  auto names = [&](std::string_view part) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
      auto words = split_words(cur);
      if (words.size() > 1) throw Error("malformed lasso entry '" + cur + "'");
      if (words.size() == 1) out.push_back(m.vertex_named(words[0]));
      cur.clear();
    };
    for (char c : part) {
      if (c == ',') flush();
      else cur += c;
    }
    flush();
    return out;
  };
  Lasso play{names(text.substr(0, bar)), names(text.substr(bar + 1))};
  check_lasso(m, play);
  return play;
}

std::string format_lasso(const Mdp& m, const Lasso& play) {
  std::string out;
  for (std::size_t i = 0; i < play.stem.size(); ++i) out += (i ? "," : "") + m.name(play.stem[i]);
  out += "|";
  for (std::size_t i = 0; i < play.cycle.size(); ++i) out += (i ? "," : "") + m.name(play.cycle[i]);
  return out;
}

Mdp make_chain(int m, const Rational& p, const Rational& alpha, const Rational& beta) {
  if (m < 1) throw Error("chain length must be at least 1");
  if (p <= 0 || p >= 1) throw Error("chain probability must lie in (0,1)");
  Mdp g;
  std::vector<int> u, v;
  for (int i = 1; i <= m + 1; ++i) u.push_back(g.add_vertex("u" + std::to_string(i), Owner::Player));
  for (int i = 1; i <= m; ++i) v.push_back(g.add_vertex("v" + std::to_string(i), Owner::Random));
  const Rational step = alpha - 1;
  g.add_edge(u[0], u[0], alpha);
  for (int i = 0; i < m; ++i) {
    g.add_edge(u[i], v[i], step);
    g.add_edge(v[i], u[0], step, 1 - p);
    g.add_edge(v[i], u[i + 1], step, p);
  }
  g.add_edge(u[m], u[m], beta);
  return g;
}

std::string write_strategy_json(const Mdp& m, const MealyStrategy& s) {
  nlohmann::json doc;
  doc["states"] = s.num_states;
  doc["initial"] = s.initial;
  if (!s.construction.empty()) doc["construction"] = s.construction;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : s.params) params[k] = v;
  if (!params.empty()) doc["params"] = params;
  doc["transitions"] = nlohmann::json::array();
  for (const auto& t : s.transitions) {
    nlohmann::json rec{{"state", t.state}, {"vertex", m.name(t.vertex)}, {"nextState", t.next}};
    if (t.choice >= 0) rec["choice"] = m.name(t.choice);
    doc["transitions"].push_back(rec);
  }
  return doc.dump(2);
}

MealyStrategy parse_strategy_json(const Mdp& m, std::string_view text) {
  MealyStrategy s;
  try {
    auto doc = nlohmann::json::parse(text);
    s.num_states = doc.at("states").get<int>();
    s.initial = doc.value("initial", 0);
    s.construction = doc.value("construction", std::string());
    if (doc.contains("params"))
      for (const auto& [k, v] : doc["params"].items()) s.params.emplace_back(k, v.get<std::string>());
    for (const auto& rec : doc.at("transitions")) {
      MealyTransition t;
      t.state = rec.at("state").get<int>();
      t.vertex = m.vertex_named(rec.at("vertex").get<std::string>());
      t.next = rec.at("nextState").get<int>();
      if (rec.contains("choice") && !rec["choice"].is_null()) t.choice = m.vertex_named(rec["choice"].get<std::string>());
      s.transitions.push_back(t);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed strategy: ") + e.what());
  }
  if (s.num_states < 1) throw Error("malformed strategy: needs at least one state");
  if (s.initial < 0 || s.initial >= s.num_states) throw Error("malformed strategy: initial state out of range");
  std::sort(s.transitions.begin(), s.transitions.end(), [](const MealyTransition& a, const MealyTransition& b) {
    return std::make_pair(a.state, a.vertex) < std::make_pair(b.state, b.vertex);
  });
  for (std::size_t i = 0; i < s.transitions.size(); ++i) {
    const auto& t = s.transitions[i];
    if (t.state < 0 || t.state >= s.num_states || t.next < 0 || t.next >= s.num_states)
      throw Error("malformed strategy: state index out of range");
    if (i > 0 && s.transitions[i - 1].state == t.state && s.transitions[i - 1].vertex == t.vertex)
      throw Error("malformed strategy: duplicate transition for state " + std::to_string(t.state) + " at " +
                  m.name(t.vertex));
    if (m.is_random(t.vertex) != (t.choice < 0))
      throw Error("malformed strategy: choice at " + m.name(t.vertex) +
                  (t.choice < 0 ? " is missing" : " belongs to a random vertex"));
    if (t.choice >= 0 && !m.find_edge(t.vertex, t.choice))
      throw Error("malformed strategy: " + m.name(t.choice) + " is not a successor of " + m.name(t.vertex));
  }
  return s;
}

}  // namespace wmp
