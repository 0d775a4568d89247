// weylk: command-line front end. Exit codes: 0 holds, 1 refuted or witness
// found, 2 usage or parse error, 3 internal invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <weylk/weylk.hpp>

#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace weylk;
using nlohmann::json;

namespace {

struct Globals {
  std::string field = "2";
  std::string k;
  std::string l;
  std::uint64_t seed = kDefaultSeed;
  std::uint32_t max_degree = 2;
  std::size_t samples = 200;
  std::string format = "text";
};

struct Report {
  std::string command;
  json inputs = json::object();
  std::string verdict;
  json value;
  json witness;
  json certificate;
  std::vector<std::string> lines;
  int exit_code = 0;

  void emit(bool structured) const {
    if (structured) {
      json out{{"command", command}, {"inputs", inputs}, {"verdict", verdict}};
      if (!value.is_null()) out["value"] = value;
      if (!witness.is_null()) out["witness"] = witness;
      if (!certificate.is_null()) out["certificate"] = certificate;
      std::cout << out.dump() << '\n';
      return;
    }
    for (const auto& line : lines) std::cout << line << '\n';
    std::cout << "verdict: " << verdict << '\n';
  }
};

struct Context {
  Globals g;
  Field F = Field::make(2, 1);
  TwistParams k{F};
  TwistParams l{F};

  void load() {
    F = parse_field_spec(g.field);
    k = parse_twist(F, g.k);
    l = parse_twist(F, g.l);
  }
  WeylPoly poly(const std::string& s) const { return parse_poly(s, F); }
  ScanConfig scan() const { return automatic_config(F, g.max_degree, g.samples, g.seed); }
  std::vector<WeylPoly> random_elements(std::size_t count) const {
    std::mt19937_64 rng(g.seed);
    std::vector<WeylPoly> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_poly(F, g.max_degree, rng));
    return out;
  }
  Report start(const std::string& command) const {
    Report r;
    r.command = command;
    r.inputs["field"] = F.spec_string();
    r.inputs["k"] = render(k);
    return r;
  }
};

json certificate_json(const Field& F, const IsoCertificate& c) {
  return {{"a0", F.render(c.a0)}, {"a1", F.render(c.a1)}, {"b0", F.render(c.b0)}, {"direction", c.direction}};
}

/// "x" or "x y": one operand is evaluated whole in the requested mode,
/// two operands are evaluated associatively and then multiplied.
WeylPoly product(const Context& ctx, const std::vector<std::string>& ops, bool twisted) {
  const EvalMode mode = twisted ? EvalMode::twisted(ctx.k) : EvalMode::associative();
  if (ops.size() == 1) return eval(*parse(ops[0], ctx.F), ctx.F, mode);
  const WeylPoly a = ctx.poly(ops[0]), b = ctx.poly(ops[1]);
  return twisted ? yau_mul(ctx.k, a, b) : a * b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic in the Weyl algebra A_1 and its hom-associative twists A_1^k"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  Globals& g = ctx.g;
  app.add_option("--field", g.field, "p, p^n or p^n:c0,...,cn")->capture_default_str();
  app.add_option("--k", g.k, "twist, e.g. 0:1,2:1");
  app.add_option("--l", g.l, "second twist (check-hom, classify-iso)");
  app.add_option("--seed", g.seed)->capture_default_str();
  app.add_option("--max-degree", g.max_degree, "total-degree window for scans")->capture_default_str();
  app.add_option("--samples", g.samples, "random samples when a window is too large to enumerate")->capture_default_str();
  app.add_option("--format", g.format)->check(CLI::IsMember({"text", "structured"}))->capture_default_str();

  std::function<Report()> run;
  std::vector<std::string> ops;
  std::string map_text, u_text = "0", v_text = "0", q_text = "0", target_text = "x", side = "all";
  std::size_t params = 1;
  std::uint32_t cap = 3;

  auto operands = [&](CLI::App* sub, std::size_t lo, std::size_t hi) {
    sub->add_option("operands", ops, "expressions")->expected(static_cast<int>(lo), static_cast<int>(hi))->required(lo > 0);
  };

  auto* mul = app.add_subcommand("mul", "product in A_1");
  operands(mul, 1, 2);
  mul->callback([&] {
    run = [&] {
      Report r = ctx.start("mul");
      r.inputs["operands"] = ops;
      const auto v = product(ctx, ops, false);
      r.value = render(v);
      r.verdict = "ok";
      r.lines.push_back(render(v));
      return r;
    };
  });

  auto* tmul = app.add_subcommand("tmul", "twisted product a * b = alpha_k(a b), left-associated");
  operands(tmul, 1, 2);
  tmul->callback([&] {
    run = [&] {
      Report r = ctx.start("tmul");
      r.inputs["operands"] = ops;
      const auto v = product(ctx, ops, true);
      r.value = render(v);
      r.verdict = "ok";
      r.lines.push_back(render(v));
      return r;
    };
  });

  auto* alpha = app.add_subcommand("alpha", "apply alpha_k");
  operands(alpha, 1, 1);
  alpha->callback([&] {
    run = [&] {
      Report r = ctx.start("alpha");
      r.inputs["operands"] = ops;
      const auto v = alpha_apply(ctx.k, ctx.poly(ops[0]));
      r.value = render(v);
      r.verdict = "ok";
      r.lines.push_back(render(v));
      return r;
    };
  });

  auto* comm = app.add_subcommand("comm", "commutator in A_1");
  operands(comm, 2, 2);
  comm->callback([&] {
    run = [&] {
      Report r = ctx.start("comm");
      r.inputs["operands"] = ops;
      const auto v = commutator(ctx.poly(ops[0]), ctx.poly(ops[1]));
      r.value = render(v);
      r.verdict = "ok";
      r.lines.push_back(render(v));
      return r;
    };
  });

  auto* scomm = app.add_subcommand("star-comm", "twisted commutator [a, b]_*");
  operands(scomm, 2, 2);
  scomm->callback([&] {
    run = [&] {
      Report r = ctx.start("star-comm");
      r.inputs["operands"] = ops;
      const WeylPoly a = ctx.poly(ops[0]), b = ctx.poly(ops[1]);
      const auto v = star_commutator(ctx.k, a, b);
      const WeylPoly x = WeylPoly::x(ctx.F), y = WeylPoly::y(ctx.F);
      if (a == x && !(star_commutator_fast(ctx.k, CommutatorSide::left_x, b) == v))
        throw invariant_violation("derivative formula for [x, f]_* disagrees with the product");
      if (b == y && !(star_commutator_fast(ctx.k, CommutatorSide::right_y, a) == v))
        throw invariant_violation("derivative formula for [f, y]_* disagrees with the product");
      r.value = render(v);
      r.verdict = "ok";
      r.lines.push_back(render(v));
      return r;
    };
  });

  auto* assoc = app.add_subcommand("assoc", "associator in A_1 (always 0)");
  operands(assoc, 3, 3);
  assoc->callback([&] {
    run = [&] {
      Report r = ctx.start("assoc");
      r.inputs["operands"] = ops;
      const auto v = associator(ctx.poly(ops[0]), ctx.poly(ops[1]), ctx.poly(ops[2]));
      if (!v.is_zero()) throw invariant_violation("A_1 associator is nonzero: " + render(v));
      r.value = "0";
      r.verdict = "zero";
      r.lines.push_back("0");
      return r;
    };
  });

  auto* sassoc = app.add_subcommand("star-assoc", "twisted associator (a * b) * c - a * (b * c)");
  operands(sassoc, 3, 3);
  sassoc->callback([&] {
    run = [&] {
      Report r = ctx.start("star-assoc");
      r.inputs["operands"] = ops;
      const WeylPoly a = ctx.poly(ops[0]), b = ctx.poly(ops[1]), c = ctx.poly(ops[2]);
      const auto v = star_associator(ctx.k, a, b, c);
      if (v.is_zero() != associator_vanishes_iff(ctx.k, a, b, c))
        throw invariant_violation("associator criterion disagrees with the direct computation");
      r.value = render(v);
      r.verdict = v.is_zero() ? "zero" : "nonzero";
      r.lines.push_back(render(v));
      r.exit_code = v.is_zero() ? 0 : 1;
      return r;
    };
  });

  auto* cha = app.add_subcommand("check-hom-assoc", "alpha(f) * (g * h) = (f * g) * alpha(h) on random triples");
  cha->callback([&] {
    run = [&] {
      Report r = ctx.start("check-hom-assoc");
      r.inputs["samples"] = g.samples;
      r.inputs["max_degree"] = g.max_degree;
      std::mt19937_64 rng(g.seed);
      for (std::size_t i = 0; i < g.samples; ++i) {
        const auto f = random_poly(ctx.F, g.max_degree, rng), gg = random_poly(ctx.F, g.max_degree, rng),
                   h = random_poly(ctx.F, g.max_degree, rng);
        if (!(yau_mul(ctx.k, alpha_apply(ctx.k, f), yau_mul(ctx.k, gg, h)) ==
              yau_mul(ctx.k, yau_mul(ctx.k, f, gg), alpha_apply(ctx.k, h)))) {
          r.verdict = "refuted";
          r.witness = {render(f), render(gg), render(h)};
          r.lines.push_back("fails at (" + render(f) + ", " + render(gg) + ", " + render(h) + ")");
          r.exit_code = 1;
          return r;
        }
      }
      r.verdict = "holds";
      r.lines.push_back(std::to_string(g.samples) + " triples checked");
      return r;
    };
  });

  auto* commuter = app.add_subcommand("commuter", "membership in C(A_1^k); without an operand, scan the window");
  operands(commuter, 0, 1);
  commuter->callback([&] {
    run = [&] {
      Report r = ctx.start("commuter");
      if (ops.empty()) {
        const auto records = commuter_scan(ctx.k, ctx.scan());
        std::size_t members = 0;
        for (const auto& rec : records) members += rec.member;
        r.inputs["max_degree"] = g.max_degree;
        r.value = {{"scanned", records.size()}, {"members", members}};
        r.lines.push_back(std::to_string(members) + " of " + std::to_string(records.size()) +
                          " scanned elements commute; all of them lie in K[x^p, y^p]");
        r.verdict = "C = K[x^p, y^p] on window";
        return r;
      }
      r.inputs["operands"] = ops;
      const auto v = in_commuter(ctx.k, ctx.poly(ops[0]), ctx.scan());
      r.verdict = v.member ? "member" : "not a member";
      if (v.witness) {
        r.witness = render(*v.witness);
        r.lines.push_back("does not commute with " + render(*v.witness));
      }
      r.exit_code = v.member ? 0 : 1;
      return r;
    };
  });

  auto* nucleus = app.add_subcommand("nucleus-scan", "scan for nonzero nucleus elements");
  nucleus->add_option("--side", side)->check(CLI::IsMember({"left", "middle", "right", "all"}))->capture_default_str();
  nucleus->callback([&] {
    run = [&] {
      Report r = ctx.start("nucleus-scan");
      r.inputs["side"] = side;
      r.inputs["max_degree"] = g.max_degree;
      std::vector<NucleusSide> sides;
      if (side == "left" || side == "all") sides.push_back(NucleusSide::left);
      if (side == "middle" || side == "all") sides.push_back(NucleusSide::middle);
      if (side == "right" || side == "all") sides.push_back(NucleusSide::right);
      json records = json::array();
      bool found = false;
      for (auto s : sides) {
        const auto scan = nucleus_scan(ctx.k, s, ctx.scan());
        if (scan.everything) {
          r.lines.push_back(std::string(to_string(s)) + ": associative, nucleus is everything");
          continue;
        }
        const auto members = scan.members();
        found = found || !members.empty();
        r.lines.push_back(std::string(to_string(s)) + ": " + std::to_string(scan.records.size()) + " candidates, " +
                          std::to_string(members.size()) + " members");
        for (const auto& rec : scan.records)
          records.push_back({{"side", to_string(s)}, {"candidate", render(rec.candidate)}, {"verdict", rec.member ? "member" : "excluded"}, {"witness", rec.witness}});
      }
      r.value = records;
      r.verdict = ctx.k.is_zero() ? "all (associative)" : found ? "nonzero members found" : "empty";
      r.exit_code = found ? 1 : 0;
      return r;
    };
  });

  auto* center = app.add_subcommand("center", "center of A_1^k");
  center->callback([&] {
    run = [&] {
      Report r = ctx.start("center");
      const auto d = center_of(ctx.k, ctx.scan());
      r.value = {{"center", d.text()}, {"scanned", d.scanned}};
      r.verdict = d.text();
      r.lines.push_back("Z = " + d.text() + " (checked on " + std::to_string(d.scanned) + " elements)");
      return r;
    };
  });

  auto* pa = app.add_subcommand("power-assoc", "power-associativity witness");
  pa->callback([&] {
    run = [&] {
      Report r = ctx.start("power-assoc");
      const auto w = power_assoc_witness(ctx.k);
      if (!w) {
        r.verdict = "power associative";
        return r;
      }
      r.verdict = "not power associative";
      r.witness = {{"element", render(w->first)}, {"associator", render(w->second)}};
      r.lines.push_back("(" + render(w->first) + ", " + render(w->first) + ", " + render(w->first) + ")_* = " + render(w->second));
      r.exit_code = 1;
      return r;
    };
  });

  auto* ns = app.add_subcommand("nonsimple", "generator of a proper two-sided ideal");
  ns->callback([&] {
    run = [&] {
      Report r = ctx.start("nonsimple");
      const auto w = nonsimple_witness(ctx.k, ctx.scan());
      r.verdict = "not simple";
      r.witness = {{"generator", render(w.generator)}, {"degree_bound", w.bound}, {"checked", w.checked}};
      r.lines.push_back("ideal generated by " + render(w.generator) + "; every nonzero element has degree >= " +
                        std::to_string(w.bound) + " (" + std::to_string(w.checked) + " samples)");
      return r;
    };
  });

  auto* ce = app.add_subcommand("check-endo", "validate an endomorphism and probe injectivity/surjectivity");
  ce->add_option("map", map_text, "x->expr; y->expr")->required();
  ce->add_option("--target", target_text, "element for the surjectivity probe")->capture_default_str();
  ce->callback([&] {
    run = [&] {
      Report r = ctx.start("check-endo");
      r.inputs["map"] = map_text;
      const auto m = parse_genmap(map_text, ctx.F, MapKind::endomorphism);
      if (!endo_validate(m)) {
        r.verdict = "not an endomorphism";
        r.witness = render(commutator(m.image_of_x, m.image_of_y));
        r.lines.push_back("[f(x), f(y)] = " + render(commutator(m.image_of_x, m.image_of_y)) + " != 1");
        r.exit_code = 1;
        return r;
      }
      const auto inj = endo_injectivity_probe(m, ctx.scan());
      if (!inj.injective)
        throw invariant_violation("endomorphism collision: " + render(inj.collision->first) + " and " + render(inj.collision->second));
      const auto sur = endo_surjectivity_probe(m, ctx.poly(target_text));
      r.lines.push_back("endomorphism of A_1; no collisions on the scanned window");
      r.lines.push_back("target " + target_text + ": " + sur.reason);
      r.value = {{"injective_on_scan", true},
                 {"target", target_text},
                 {"surjectivity", sur.outcome == SurjectivityProbe::Outcome::unreachable ? "unreachable"
                                  : sur.outcome == SurjectivityProbe::Outcome::reachable ? "reachable"
                                                                                        : "inconclusive"},
                 {"reason", sur.reason}};
      r.verdict = "endomorphism";
      return r;
    };
  });

  auto* ch = app.add_subcommand("check-hom", "is the map a homomorphism A_1^k -> A_1^l");
  ch->add_option("map", map_text)->required();
  ch->callback([&] {
    run = [&] {
      Report r = ctx.start("check-hom");
      r.inputs["l"] = render(ctx.l);
      r.inputs["map"] = map_text;
      const auto m = parse_genmap(map_text, ctx.F, MapKind::endomorphism);
      const bool holds = hom_check(ctx.k, ctx.l, m);
      const auto behavior = hom_check_behavioral(ctx.k, ctx.l, m, ctx.random_elements(std::min<std::size_t>(g.samples, 24)));
      if (holds != behavior.holds) throw invariant_violation("generator criterion and sampled behavior disagree");
      r.verdict = holds ? "homomorphism" : "not a homomorphism";
      if (!holds) r.witness = behavior.witness;
      r.lines.push_back(holds ? "conditions on f(x), f(y) hold" : behavior.witness);
      r.exit_code = holds ? 0 : 1;
      return r;
    };
  });

  auto der_report = [&](Report& r, const GenMap& d, const std::optional<DerivationTriple>& t) {
    if (!der_validate(d)) {
      r.verdict = "not a derivation of A_1";
      r.exit_code = 1;
      return;
    }
    const bool iii = hom_der_check(ctx.k, d);
    const auto behavior = hom_der_behavioral(ctx.k, d, ctx.random_elements(std::min<std::size_t>(g.samples, 24)));
    if (iii != behavior.holds) throw invariant_violation("derivation criterion and sampled Leibniz rule disagree");
    json v{{"delta_x", render(d.image_of_x)}, {"delta_y", render(d.image_of_y)}, {"condition_iii", iii}};
    r.lines.push_back("delta(x) = " + render(d.image_of_x) + ", delta(y) = " + render(d.image_of_y));
    if (t) {
      const bool iv = der_condition_iv(ctx.k, *t);
      v["condition_iv"] = iv;
      if (iv != iii) throw invariant_violation("conditions (iii) and (iv) disagree");
      if (ctx.k.is_k0_only() && !ctx.k.is_zero()) {
        const auto c1 = der_case1_check(ctx.k, *t);
        v["case1"] = c1.verdict();
        v["case1_displayed_family4"] = c1.displayed_verdict();
        r.lines.push_back(std::string("coefficient equations: ") + (c1.verdict() ? "hold" : "fail") +
                          (c1.verdict() != c1.displayed_verdict() ? " (C(p-1, m-i) variant disagrees)" : ""));
      } else if (!ctx.k.is_k0_only()) {
        const auto c2 = der_case2_classify(ctx.k, *t);
        v["p2_pattern"] = c2.p2_pattern;
        v["displayed_shape"] = c2.displayed_shape;
        v["corrected_shape"] = c2.corrected_shape;
        v["flagged"] = c2.flagged();
        r.lines.push_back(std::string("shape ayx + b_i y^i x + c_i y x^i: ") + (c2.displayed_shape ? "yes" : "no") +
                          (c2.flagged() ? " (flagged: derivation outside that shape)" : ""));
      }
    }
    r.value = v;
    r.verdict = iii ? "derivation of A_1^k" : "not a derivation of A_1^k";
    if (!iii) r.witness = behavior.witness;
    r.exit_code = iii ? 0 : 1;
  };

  auto* cd = app.add_subcommand("check-der", "is the map a derivation of A_1^k");
  cd->add_option("map", map_text, "x->delta(x); y->delta(y)")->required();
  cd->callback([&] {
    run = [&] {
      Report r = ctx.start("check-der");
      r.inputs["map"] = map_text;
      der_report(r, parse_genmap(map_text, ctx.F, MapKind::derivation), std::nullopt);
      return r;
    };
  });

  auto* dft = app.add_subcommand("der-from-triple", "delta = u E_x + v E_y + ad_q");
  dft->add_option("--u", u_text)->capture_default_str();
  dft->add_option("--v", v_text)->capture_default_str();
  dft->add_option("--q", q_text)->capture_default_str();
  dft->callback([&] {
    run = [&] {
      Report r = ctx.start("der-from-triple");
      r.inputs["u"] = u_text;
      r.inputs["v"] = v_text;
      r.inputs["q"] = q_text;
      const DerivationTriple t{ctx.poly(u_text), ctx.poly(v_text), ctx.poly(q_text)};
      der_report(r, der_from_triple(t), t);
      return r;
    };
  });

  auto* iso = app.add_subcommand("classify-iso", "decide A_1^k = A_1^l");
  iso->callback([&] {
    run = [&] {
      Report r = ctx.start("classify-iso");
      r.inputs["l"] = render(ctx.l);
      const auto res = are_isomorphic(ctx.k, ctx.l);
      r.verdict = res.isomorphic ? "isomorphic" : "not isomorphic";
      r.lines.push_back(res.reason);
      if (res.certificate) {
        r.certificate = certificate_json(ctx.F, *res.certificate);
        r.lines.push_back("map " + render(*res.forward(ctx.F)) + ", inverse " + render(*res.backward(ctx.F)));
      } else {
        r.witness = res.reason;
      }
      r.exit_code = res.isomorphic ? 0 : 1;
      return r;
    };
  });

  auto* dc = app.add_subcommand("deform-check", "hom-associativity and hom-Jacobi of the truncated deformation");
  dc->add_option("--params", params, "number of parameters t_1..t_{M+1}")->capture_default_str();
  dc->add_option("--cap", cap, "total t-degree cap")->capture_default_str();
  dc->callback([&] {
    run = [&] {
      Report r = ctx.start("deform-check");
      r.inputs["params"] = params;
      r.inputs["cap"] = cap;
      r.inputs["samples"] = g.samples;
      if (params == 0) throw std::invalid_argument("--params must be positive");
      const auto shape = DeformShape::standard(ctx.F, static_cast<std::uint32_t>(params - 1));
      std::mt19937_64 rng(g.seed);
      std::vector<Triple> triples;
      for (std::size_t i = 0; i < g.samples; ++i)
        triples.push_back({random_poly(ctx.F, g.max_degree, rng), random_poly(ctx.F, g.max_degree, rng),
                           random_poly(ctx.F, g.max_degree, rng)});
      const bool ha = check_hom_assoc_t(shape, triples, cap);
      const bool hj = check_hom_jacobi_t(shape, triples, cap);
      r.value = {{"hom_associative", ha}, {"hom_jacobi", hj}};
      r.lines.push_back(std::string("hom-associativity: ") + (ha ? "holds" : "fails"));
      r.lines.push_back(std::string("hom-Jacobi: ") + (hj ? "holds" : "fails"));
      r.verdict = ha && hj ? "holds" : "refuted";
      r.exit_code = ha && hj ? 0 : 1;
      return r;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    ctx.load();
    const Report r = run();
    r.emit(g.format == "structured");
    return r.exit_code;
  } catch (const invariant_violation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
