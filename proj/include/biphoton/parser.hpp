#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biphoton/circuit.hpp"

namespace biphoton {

struct ParseResult {
  Circuit circuit;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return !has_errors(diagnostics); }
};

namespace dsl_detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> toks;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

/// key=value arguments of one statement, with duplicate/missing/unknown
/// tracking. All diagnostics carry the statement's line number.
class ArgSet {
 public:
  ArgSet(int line, std::vector<Diagnostic>& diags) : line_(line), diags_(&diags) {}

  void add(std::string_view tok) {
    const size_t eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      error("expected key=value argument", tok);
      return;
    }
    std::string key(tok.substr(0, eq));
    std::string val(tok.substr(eq + 1));
    if (args_.count(key)) {
      error("duplicate key '" + key + "'", tok);
      return;
    }
    args_[key] = val;
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = args_.find(key);
    if (it == args_.end()) return std::nullopt;
    std::string v = it->second;
    args_.erase(it);
    return v;
  }

  std::optional<std::string> require(const std::string& key) {
    auto v = take(key);
    if (!v) error("missing key '" + key + "'", "");
    return v;
  }

  std::optional<double> require_number(const std::string& key) {
    auto v = require(key);
    if (!v) return std::nullopt;
    return parse_number(key, *v);
  }

  std::optional<double> take_number(const std::string& key) {
    auto v = take(key);
    if (!v) return std::nullopt;
    return parse_number(key, *v);
  }

  std::optional<double> parse_number(const std::string& key, const std::string& v) {
    double out = 0.0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e) {
      error("malformed number for '" + key + "'", v);
      return std::nullopt;
    }
    return out;
  }

  std::optional<Pol> require_pol(const std::string& key) {
    auto v = require(key);
    if (!v) return std::nullopt;
    auto p = parse_pol(*v);
    if (!p) error("polarization must be H or V", *v);
    return p;
  }

  /// Two comma-separated labels, e.g. in=a,b.
  std::optional<std::pair<std::string, std::string>> require_label_pair(const std::string& key) {
    auto v = require(key);
    if (!v) return std::nullopt;
    const size_t c = v->find(',');
    if (c == std::string::npos || c == 0 || c + 1 >= v->size() ||
        v->find(',', c + 1) != std::string::npos) {
      error("expected two comma-separated labels for '" + key + "'", *v);
      return std::nullopt;
    }
    std::string a = v->substr(0, c), b = v->substr(c + 1);
    if (a == b) {
      error("duplicate port '" + a + "' in '" + key + "'", *v);
      return std::nullopt;
    }
    return std::make_pair(a, b);
  }

  /// Flag any keys the statement does not understand.
  void finish() {
    for (const auto& [k, v] : args_) error("unknown key '" + k + "'", k + "=" + v);
  }

  void error(std::string msg, std::string_view tok) {
    diags_->push_back(
        {Diagnostic::Severity::kError, line_, std::move(msg), std::string(tok)});
    failed_ = true;
  }

  bool failed() const { return failed_; }

 private:
  int line_;
  std::vector<Diagnostic>* diags_;
  std::map<std::string, std::string> args_;
  bool failed_ = false;
};

}  // namespace dsl_detail

/// Parse circuit text. Total: every input yields a (possibly partial)
/// Circuit plus diagnostics; bad lines are skipped, never aborting the file.
inline ParseResult parse_circuit(std::string_view text) {
  using namespace dsl_detail;
  ParseResult res;
  Circuit& c = res.circuit;

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    const std::string_view dir = toks[0];
    auto error = [&](std::string msg, std::string_view tok) {
      res.diagnostics.push_back(
          {Diagnostic::Severity::kError, line_no, std::move(msg), std::string(tok)});
    };

    auto named_args = [&](size_t min_toks) -> std::optional<std::pair<std::string, ArgSet>> {
      if (toks.size() < min_toks) {
        error("statement needs a name", dir);
        return std::nullopt;
      }
      std::string name(toks[1]);
      if (name.find('=') != std::string::npos) {
        error("statement needs a name before its arguments", toks[1]);
        return std::nullopt;
      }
      ArgSet args(line_no, res.diagnostics);
      for (size_t i = 2; i < toks.size(); ++i) args.add(toks[i]);
      return std::make_pair(std::move(name), std::move(args));
    };

    if (dir == "photon") {
      auto na = named_args(2);
      if (!na) continue;
      auto& [name, args] = *na;
      PhotonDecl p;
      p.name = name;
      p.line = line_no;
      auto mode = args.require("mode");
      auto pol = args.require_pol("pol");
      auto wl = args.require_number("wavelength_nm");
      auto bw = args.require_number("bandwidth_nm");
      auto dl = args.require_number("delay_fs");
      auto ov = args.take_number("mode_overlap");
      args.finish();
      if (args.failed()) continue;
      p.mode = *mode;
      p.pol = *pol;
      p.wavelength_nm = *wl;
      p.bandwidth_nm = *bw;
      p.delay_fs = *dl;
      p.mode_overlap = ov.value_or(1.0);
      c.photons.push_back(std::move(p));
    } else if (dir == "bs" || dir == "pbs") {
      auto na = named_args(2);
      if (!na) continue;
      auto& [name, args] = *na;
      auto in = args.require_label_pair("in");
      auto out = args.require_label_pair("out");
      args.finish();
      if (args.failed()) continue;
      if (dir == "bs")
        c.elements.push_back(
            {name, Beamsplitter{in->first, in->second, out->first, out->second}, line_no});
      else
        c.elements.push_back({name,
                              PolarizingBeamsplitter{in->first, in->second, out->first,
                                                     out->second},
                              line_no});
    } else if (dir == "hwp") {
      auto na = named_args(2);
      if (!na) continue;
      auto& [name, args] = *na;
      auto mode = args.require("mode");
      auto angle = args.require_number("angle_deg");
      args.finish();
      if (args.failed()) continue;
      c.elements.push_back({name, HalfWavePlate{*mode, *angle}, line_no});
    } else if (dir == "phase") {
      auto na = named_args(2);
      if (!na) continue;
      auto& [name, args] = *na;
      auto mode = args.require("mode");
      auto phi = args.require_number("phi_rad");
      args.finish();
      if (args.failed()) continue;
      c.elements.push_back({name, PhaseShift{*mode, *phi}, line_no});
    } else if (dir == "delay") {
      auto na = named_args(2);
      if (!na) continue;
      auto& [name, args] = *na;
      auto mode = args.require("mode");
      auto tau = args.require_number("tau_fs");
      args.finish();
      if (args.failed()) continue;
      c.elements.push_back({name, DelayLine{*mode, *tau}, line_no});
    } else if (dir == "pol") {
      auto na = named_args(2);
      if (!na) continue;
      auto& [name, args] = *na;
      auto mode = args.require("mode");
      auto angle = args.require_number("angle_deg");
      auto ext = args.require_number("extinction");
      args.finish();
      if (args.failed()) continue;
      c.elements.push_back({name, Polarizer{*mode, *angle, *ext}, line_no});
    } else if (dir == "detector") {
      auto na = named_args(2);
      if (!na) continue;
      auto& [name, args] = *na;
      auto mode = args.require("mode");
      auto pol = args.require_pol("pol");
      args.finish();
      if (args.failed()) continue;
      c.detectors.push_back({name, *mode, *pol, line_no});
    } else if (dir == "discard") {
      if (toks.size() != 2) {
        error("discard takes exactly one mode label", dir);
        continue;
      }
      c.discards.push_back({std::string(toks[1]), line_no});
    } else if (dir == "coincidence") {
      if (toks.size() != 2) {
        error("coincidence takes one det1,det2 argument", dir);
        continue;
      }
      const std::string_view v = toks[1];
      const size_t comma = v.find(',');
      if (comma == std::string_view::npos || comma == 0 || comma + 1 >= v.size() ||
          v.find(',', comma + 1) != std::string_view::npos) {
        error("expected two comma-separated detector names", v);
        continue;
      }
      c.coincidences.push_back(
          {std::string(v.substr(0, comma)), std::string(v.substr(comma + 1)), line_no});
    } else {
      error("unknown directive '" + std::string(dir) + "'", dir);
    }
  }

  if (c.photons.empty())
    res.diagnostics.push_back(
        {Diagnostic::Severity::kError, 0, "no photon declarations", ""});
  return res;
}

}  // namespace biphoton
