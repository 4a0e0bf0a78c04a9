#include "ncgft/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ncgft
{

  namespace
  {

    using nlohmann::json;

    [[noreturn]] void fail(const std::string & msg)
    {
      throw std::runtime_error("config: " + msg);
    }

    // ---- TOML subset ------------------------------------------------------

    struct TomlCursor
    {
      const std::string & s;
      size_t pos = 0;

      bool done() const { return pos >= s.size(); }
      char peek() const { return s[pos]; }
      void skip_ws()
      {
        while (!done() && (s[pos] == ' ' || s[pos] == '\t')) pos++;
      }
    };

    json toml_value(TomlCursor & c);

    json toml_array(TomlCursor & c)
    {
      json arr = json::array();
      c.pos++;  // '['
      while (true) {
        c.skip_ws();
        while (!c.done() && (c.peek() == '\n' || c.peek() == '\r')) { c.pos++; c.skip_ws(); }
        if (c.done()) fail("unterminated array");
        if (c.peek() == ']') { c.pos++; return arr; }
        arr.push_back(toml_value(c));
        c.skip_ws();
        while (!c.done() && (c.peek() == '\n' || c.peek() == '\r')) { c.pos++; c.skip_ws(); }
        if (!c.done() && c.peek() == ',') c.pos++;
      }
    }

    json toml_value(TomlCursor & c)
    {
      c.skip_ws();
      if (c.done()) fail("missing value");
      char ch = c.peek();
      if (ch == '[') return toml_array(c);
      if (ch == '"' || ch == '\'') {
        char quote = ch;
        c.pos++;
        std::string out;
        while (!c.done() && c.peek() != quote) {
          if (quote == '"' && c.peek() == '\\' && c.pos + 1 < c.s.size()) {
            c.pos++;
            char e = c.s[c.pos];
            out += (e == 'n') ? '\n' : (e == 't') ? '\t' : e;
          } else {
            out += c.peek();
          }
          c.pos++;
        }
        if (c.done()) fail("unterminated string");
        c.pos++;
        return out;
      }
      std::string tok;
      while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '#'
             && c.peek() != '\n' && c.peek() != '\r') {
        tok += c.peek();
        c.pos++;
      }
      while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
      if (tok == "true") return true;
      if (tok == "false") return false;
      if (tok.empty()) fail("missing value");
      try {
        size_t used = 0;
        if (tok.find_first_of(".eEinf") == std::string::npos) {
          long long v = std::stoll(tok, &used);
          if (used == tok.size()) return v;
        }
        double v = std::stod(tok, &used);
        if (used == tok.size()) return v;
      } catch (...) {
      }
      fail("bad TOML value: '" + tok + "'");
    }

  }

  nlohmann::json toml_to_json(const std::string & text)
  {
    json root = json::object();
    json * table = &root;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (line[start] == '#') continue;
      if (line[start] == '[') {
        size_t end = line.find(']', start);
        if (end == std::string::npos) fail("unterminated table header");
        std::string name = line.substr(start + 1, end - start - 1);
        table = &root;
        std::istringstream parts(name);
        std::string part;
        while (std::getline(parts, part, '.')) {
          table = &((*table)[part]);
          if (!table->is_object()) *table = json::object();
        }
        continue;
      }
      size_t eq = line.find('=', start);
      if (eq == std::string::npos) fail("expected key = value: '" + line + "'");
      std::string key = line.substr(start, eq - start);
      while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
      if (key.empty()) fail("empty key");
      // arrays may continue across lines: gather until balanced
      std::string rest = line.substr(eq + 1);
      int depth = 0;
      for (char ch : rest) {
        if (ch == '[') depth++;
        if (ch == ']') depth--;
      }
      while (depth > 0 && std::getline(in, line)) {
        rest += "\n" + line;
        for (char ch : line) {
          if (ch == '[') depth++;
          if (ch == ']') depth--;
        }
      }
      TomlCursor c{rest};
      (*table)[key] = toml_value(c);
      c.skip_ws();
      if (!c.done() && c.peek() != '#' && c.peek() != '\n' && c.peek() != '\r') {
        fail("trailing characters after value for key '" + key + "'");
      }
    }
    return root;
  }

  namespace
  {

    void check_keys(const json & obj, const std::string & where,
                    const std::vector<std::string> & allowed)
    {
      for (const auto & [key, val] : obj.items()) {
        bool ok = false;
        for (const std::string & a : allowed) {
          if (key == a) { ok = true; break; }
        }
        if (!ok) fail("unknown key '" + where + key + "'");
      }
    }

    std::vector<int> int_list(const json & v, const std::string & what)
    {
      if (!v.is_array()) fail(what + " must be an array of integers");
      std::vector<int> out;
      for (const auto & e : v) {
        if (!e.is_number_integer()) fail(what + " must contain integers");
        out.push_back(e.get<int>());
      }
      return out;
    }

  }

  RunConfig parse_config(const nlohmann::json & doc)
  {
    if (!doc.is_object()) fail("document must be a table/object");
    check_keys(doc, "", {"name", "embedding", "path", "optimizer", "seed", "threads",
                         "output", "discontinuity_threshold", "masses", "k0"});

    RunConfig cfg;
    if (doc.contains("name")) cfg.name = doc.at("name").get<std::string>();

    if (!doc.contains("embedding")) fail("missing 'embedding' table");
    const json & emb = doc.at("embedding");
    check_keys(emb, "embedding.", {"source", "target", "mult"});
    if (!emb.contains("source") || !emb.contains("target") || !emb.contains("mult")) {
      fail("'embedding' needs source, target and mult");
    }
    AlgebraProfile source{int_list(emb.at("source"), "embedding.source")};
    AlgebraProfile target{int_list(emb.at("target"), "embedding.target")};
    std::vector<std::vector<int>> mult;
    if (!emb.at("mult").is_array()) fail("embedding.mult must be a matrix");
    for (const auto & row : emb.at("mult")) {
      mult.push_back(int_list(row, "embedding.mult row"));
    }
    cfg.spec = validate_embedding(source, target, mult);

    if (doc.contains("path")) {
      const json & p = doc.at("path");
      check_keys(p, "path.", {"kind", "range", "samples", "c", "from", "to"});
      std::string kind = p.value("kind", "diagonal");
      if (kind == "diagonal") cfg.path.kind = PathSpec::Kind::Diagonal;
      else if (kind == "anti-diagonal") cfg.path.kind = PathSpec::Kind::AntiDiagonal;
      else if (kind == "grid") cfg.path.kind = PathSpec::Kind::Grid;
      else if (kind == "segment") cfg.path.kind = PathSpec::Kind::Segment;
      else fail("unknown path.kind '" + kind + "'");
      if (p.contains("range")) {
        if (!p.at("range").is_array() || p.at("range").size() != 2) {
          fail("path.range must be [t0, t1]");
        }
        cfg.path.t0 = p.at("range")[0].get<double>();
        cfg.path.t1 = p.at("range")[1].get<double>();
      }
      cfg.path.samples = p.value("samples", cfg.path.samples);
      if (cfg.path.samples < 2) fail("path.samples must be >= 2");
      cfg.path.c = p.value("c", cfg.path.c);
      if (p.contains("from")) cfg.path.from = p.at("from").get<std::vector<double>>();
      if (p.contains("to")) cfg.path.to = p.at("to").get<std::vector<double>>();
    }

    if (doc.contains("optimizer")) {
      const json & o = doc.at("optimizer");
      check_keys(o, "optimizer.", {"restarts", "max_iters", "grad_tol", "box"});
      cfg.opts.restarts = o.value("restarts", cfg.opts.restarts);
      if (cfg.opts.restarts < 1) fail("optimizer.restarts must be >= 1");
      cfg.opts.max_iters = o.value("max_iters", cfg.opts.max_iters);
      cfg.opts.grad_tol = o.value("grad_tol", cfg.opts.grad_tol);
      cfg.opts.box = o.value("box", cfg.opts.box);
    }

    cfg.opts.seed = doc.value("seed", static_cast<std::uint64_t>(0));
    cfg.opts.threads = doc.value("threads", 1);
    cfg.output_dir = doc.value("output", cfg.output_dir);
    cfg.discontinuity_threshold = doc.value("discontinuity_threshold",
                                            cfg.discontinuity_threshold);

    if (doc.contains("masses")) {
      const json & m = doc.at("masses");
      check_keys(m, "masses.", {"lambdas"});
      if (m.contains("lambdas")) {
        cfg.masses_lambdas = m.at("lambdas").get<std::vector<double>>();
      }
    }
    if (doc.contains("k0")) {
      const json & k = doc.at("k0");
      check_keys(k, "k0.", {"vector"});
      if (k.contains("vector")) {
        cfg.k0_vector = k.at("vector").get<std::vector<long long>>();
      }
    }

    // canonical echo with defaults filled in
    json echo;
    echo["name"] = cfg.name;
    echo["embedding"] = {{"source", cfg.spec.source.dims},
                         {"target", cfg.spec.target.dims},
                         {"mult", cfg.spec.mult}};
    const char * kinds[] = {"diagonal", "anti-diagonal", "grid", "segment"};
    echo["path"] = {{"kind", kinds[static_cast<int>(cfg.path.kind)]},
                    {"range", {cfg.path.t0, cfg.path.t1}},
                    {"samples", cfg.path.samples},
                    {"c", cfg.path.c}};
    if (!cfg.path.from.empty()) echo["path"]["from"] = cfg.path.from;
    if (!cfg.path.to.empty()) echo["path"]["to"] = cfg.path.to;
    echo["optimizer"] = {{"restarts", cfg.opts.restarts},
                         {"max_iters", cfg.opts.max_iters},
                         {"grad_tol", cfg.opts.grad_tol},
                         {"box", cfg.opts.box}};
    echo["seed"] = cfg.opts.seed;
    echo["threads"] = cfg.opts.threads;
    echo["output"] = cfg.output_dir;
    echo["discontinuity_threshold"] = cfg.discontinuity_threshold;
    if (!cfg.masses_lambdas.empty()) echo["masses"] = {{"lambdas", cfg.masses_lambdas}};
    if (!cfg.k0_vector.empty()) echo["k0"] = {{"vector", cfg.k0_vector}};
    cfg.echo = std::move(echo);
    return cfg;
  }

  RunConfig load_config_file(const std::string & path)
  {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
      return parse_config(nlohmann::json::parse(text));
    }
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") {
      return parse_config(toml_to_json(text));
    }
    fail("unknown config extension (expected .json or .toml): '" + path + "'");
  }

  nlohmann::json preset_config(const std::string & name)
  {
    nlohmann::json doc;
    doc["name"] = name;
    doc["path"] = {{"kind", "diagonal"}, {"range", {-1.0, 3.0}}, {"samples", 161}};
    if (name == "case1") {
      doc["embedding"] = {{"source", {2}}, {"target", {3}}, {"mult", {{1}}}};
    } else if (name == "case2") {
      doc["embedding"] = {{"source", {2, 2}}, {"target", {4}}, {"mult", {{1, 1}}}};
    } else if (name == "case3") {
      doc["embedding"] = {{"source", {2, 2}}, {"target", {5}}, {"mult", {{1, 1}}}};
    } else if (name == "case4") {
      doc["embedding"] = {{"source", {2, 3}}, {"target", {5}}, {"mult", {{1, 1}}}};
    } else {
      fail("unknown preset '" + name + "' (expected case1..case4)");
    }
    return doc;
  }

}
