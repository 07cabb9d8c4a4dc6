// nfctool: command-line surface over the toolkit.  One JSON document per
// invocation in --json mode; exit codes: 0 ok, 2 input error, 3 hypothesis
// failure, 4 resource budget, 5 probabilistic failure.
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nfc/bounds.hpp"
#include "nfc/catalog.hpp"
#include "nfc/geom.hpp"
#include "nfc/group.hpp"
#include "nfc/invariants.hpp"
#include "nfc/lattice.hpp"
#include "nfc/optimize.hpp"

using namespace nfc;
using json = nlohmann::ordered_json;

namespace {

struct Config {
  std::string group_name, builder, catalog_path;
  uint64_t seed = 0;
  int max_degree = 0;
  std::vector<unsigned long> moduli;
  bool json_mode = false;
  bool slow = false;
  std::string cache_dir;
  long d = 1, n = 0;
  std::string kind, params_str, stages;
  std::string variant = "none";
};

ParamMap parse_params(const std::string &s) {
  ParamMap pm;
  std::istringstream ls(s);
  std::string tok;
  while (std::getline(ls, tok, ',')) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("params must be key=value, got " + tok);
    pm.set(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return pm;
}

std::pair<PermGroup, std::string> resolve_group(const Config &cfg) {
  if (!cfg.group_name.empty()) {
    auto entry = cfg.catalog_path.empty()
                     ? catalog_group(cfg.group_name)
                     : [&] {
                         for (auto &e : parse_catalog(cfg.catalog_path))
                           if (e.name == cfg.group_name) return e;
                         throw std::invalid_argument("group not in catalog: " +
                                                     cfg.group_name);
                       }();
    return {entry.build(), entry.name};
  }
  if (!cfg.builder.empty()) {
    auto act = build_from_spec(cfg.builder);
    return {act.group, cfg.builder};
  }
  throw std::invalid_argument("need --group or --builder");
}

json exponent_json(const Exponent &e) {
  json j;
  if (e.exact.has_value())
    j["exact"] = e.exact->get_str();
  else
    j["approx"] = e.encl.approx();
  j["desc"] = e.desc;
  return j;
}

json bound_json(const BoundExpr &B) {
  json j;
  j["kind"] = B.kind;
  j["constant"] = B.constant.unspecified ? json("unspecified") : json(B.constant.str());
  j["x_exp"] = exponent_json(B.x);
  j["disc_exp"] = exponent_json(B.disc);
  j["log_pow"] = B.log_pow.get_str();
  j["epsilon"] = B.epsilon;
  if (!B.validity.empty()) j["validity"] = B.validity;
  if (!B.notes.empty()) j["notes"] = B.notes;
  return j;
}

void emit(const Config &cfg, const json &doc) {
  if (cfg.json_mode) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::function<void(const json &, std::string)> walk = [&](const json &v,
                                                              std::string prefix) {
      if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
          walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
      } else if (v.is_array()) {
        std::cout << prefix << ": " << v.dump() << "\n";
      } else {
        std::cout << prefix << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                  << "\n";
      }
    };
    walk(doc, "");
  }
}

int run_group(const Config &cfg, bool exact_base, bool full_sweep, bool classes,
              bool do_export) {
  auto [G, name] = resolve_group(cfg);
  json doc;
  doc["command"] = "group";
  doc["group"] = name;
  doc["degree"] = G.degree();
  doc["order"] = G.order().get_str();
  bool trans = G.transitive();
  doc["transitive"] = trans;
  if (trans) doc["primitive"] = G.primitive();

  Int sweep_budget = cfg.slow ? Int("1000000000") : Int(30000000);
  if (G.order() > 1) {
    if (G.order() > sweep_budget && !full_sweep)
      doc["ind"] = "skipped (order above sweep budget; use --full-index-sweep --slow)";
    else {
      if (G.order() > sweep_budget)
        throw ResourceError("full index sweep of this order requires --slow");
      doc["ind"] = G.group_index(sweep_budget);
    }
  }
  auto base = G.greedy_base();
  doc["greedy_base_size"] = base.size();
  {
    json b = json::array();
    for (int p : base) b.push_back(p + 1);
    doc["greedy_base"] = b;
  }
  if (exact_base) {
    auto mb = G.minimal_base_exact();
    doc["exact_base_size"] = mb.size();
  }
  if (classes) {
    auto prof = G.cyclic_class_profile(cfg.slow ? Int(2000000) : Int(1000000), cfg.seed);
    json t;
    for (auto &[v, c] : prof.table) t[std::to_string(v)] = c;
    doc["cyclic_class_profile"] = t;
    doc["b_at_ind"] = prof.b_at_ind;
  }
  if (do_export) {
    CatalogEntry e;
    e.name = name;
    e.degree = G.degree();
    e.generators = G.generators();
    doc["catalog"] = catalog_entry_text(e);
  }
  emit(cfg, doc);
  return 0;
}

int run_invariants(const Config &cfg, bool minimal_profile, int dimension,
                   bool cumulative, bool construct, bool verify) {
  auto [G, name] = resolve_group(cfg);
  Invariants inv(G);
  json doc;
  doc["command"] = "invariants";
  doc["group"] = name;

  if (dimension > 0) {
    doc["degree"] = dimension;
    doc["cumulative"] = cumulative;
    doc["dimension"] = inv.invariant_dimension(dimension, cumulative);
    emit(cfg, doc);
    return 0;
  }

  if (construct) {
    if (cfg.builder.empty())
      throw std::invalid_argument("--construct needs --builder (sigma sets)");
    auto act = build_from_spec(cfg.builder);
    auto sig = sigma_sets(act);
    Invariants::SigmaVariant var = cfg.variant == "a"   ? Invariants::SigmaVariant::a
                                   : cfg.variant == "b" ? Invariants::SigmaVariant::b
                                                        : Invariants::SigmaVariant::none;
    auto res = inv.construct_from_sigmas(sig.sets, var, cfg.seed);
    doc["t"] = res.t;
    doc["w"] = res.w;
    doc["w_prime"] = res.w_prime;
    doc["w_cap"] = sig.w_cap;
    doc["exceptional"] = res.exceptional;
    doc["degrees"] = res.profile.degrees();
    doc["degree_sum"] = res.profile.deg_sum();
    doc["verified_independent"] = res.verified_independent;
    emit(cfg, doc);
    return 0;
  }

  if (minimal_profile) {
    if (cfg.max_degree <= 0) throw std::invalid_argument("--max-degree required");
    CompIndex ix(G.degree(), cfg.max_degree);
    if (!cfg.slow && ix.count() > 500000)
      throw ResourceError(
          "minimal profile at this size needs --slow (monomial space " +
          ix.count().get_str() + ")");
    std::string cache_dir = cfg.cache_dir;
    if (cache_dir.empty())
      if (const char *env = std::getenv("NFC_CACHE_DIR")) cache_dir = env;
    std::string key = profile_cache_key(G, name, cfg.max_degree, cfg.seed);
    Invariants::ProfileResult r;
    bool from_cache = false;
    if (auto hit = profile_cache_load(cache_dir, key, G.degree())) {
      r = *hit;
      from_cache = true;
    } else {
      r = inv.minimal_degree_profile(cfg.max_degree, cfg.seed);
      profile_cache_store(cache_dir, key, r);
    }
    doc["max_degree"] = cfg.max_degree;
    doc["seed"] = cfg.seed;
    doc["degrees"] = r.profile.degrees();
    doc["degree_sum"] = r.profile.deg_sum();
    doc["I1"] = r.profile.i1().get_str();
    doc["power_sum_prefix"] = r.profile.power_sum_prefix(G.degree());
    doc["minimal"] = r.certificate.minimal;
    json cert = json::array();
    for (auto &l : r.certificate.lines)
      cert.push_back({{"d", l.d},
                      {"inv_dim", l.inv_dim},
                      {"subalg_dim", l.subalg_dim},
                      {"exact_expansion", l.exact_expansion}});
    doc["certificate"] = cert;
    doc["cache"] = from_cache ? "hit" : (cache_dir.empty() ? "disabled" : "stored");
    if (verify) {
      auto v = inv.jacobian_independent(r.profile.invariants, 3, cfg.moduli, cfg.seed);
      doc["verified_independent"] = v.independent;
    }
    emit(cfg, doc);
    return 0;
  }

  throw std::invalid_argument(
      "invariants: choose --minimal-profile (or just --max-degree), --dimension, "
      "or --construct");
}

int run_geometry(const Config &cfg, bool do_sigma, const std::string &affine,
                 const std::string &diagonal, const std::string &largeq) {
  json doc;
  doc["command"] = "geometry";
  if (!affine.empty()) {
    auto pm = parse_params(affine);
    auto rep = affine_recipe(pm.kv.count("g0") ? pm.kv.at("g0") : "gl", (int)pm.li("m"),
                             (int)pm.li("p"));
    doc["affine"] = {{"p", rep.p},
                     {"m", rep.m},
                     {"g_order", rep.g_order.get_str()},
                     {"degree", rep.g_degree},
                     {"index_g_h", rep.index_g_h},
                     {"index_h0t_h", rep.index_h0t_h},
                     {"h0t_image_order", rep.h0t_coset_image_order.get_str()},
                     {"image_in_agl1", rep.image_in_agl1},
                     {"faithful", rep.faithful}};
    emit(cfg, doc);
    return 0;
  }
  if (!diagonal.empty()) {
    PermGroup T = [&] {
      if (diagonal == "A5")
        return PermGroup(5, {Perm::parse_cycles("(1,2,3)", 5),
                             Perm::parse_cycles("(3,4,5)", 5)});
      return catalog_group(diagonal).build();
    }();
    auto rep = diagonal_recipe(T, cfg.slow ? Int(20000) : Int(5000), cfg.seed);
    doc["diagonal"] = {{"t_order", rep.t_order.get_str()},
                       {"pi1_degree", rep.pi1_degree},
                       {"pi2_degree", rep.pi2_degree},
                       {"index_t_h", rep.index_t_h},
                       {"pi2_faithful", rep.pi2_faithful},
                       {"swap", rep.swap.get_str()},
                       {"ind_pi1", rep.ind_pi1},
                       {"swap_bound_ok", rep.swap_bound_ok}};
    emit(cfg, doc);
    return 0;
  }
  if (!largeq.empty()) {
    auto pm = parse_params(largeq);
    auto res = large_q_vector_search((int)pm.li("m"), (int)pm.li("q"));
    json j;
    j["feasible"] = res.feasible;
    j["inequality"] = res.inequality;
    if (res.feasible) {
      j["witness"] = res.witness;
      j["stabilizer_checked"] = res.stabilizer_checked;
      j["bulk_degree"] = res.bulk_degree;
      j["contradiction"] = res.contradiction;
    }
    doc["large_q"] = j;
    emit(cfg, doc);
    return 0;
  }
  if (cfg.builder.empty()) throw std::invalid_argument("geometry needs --builder");
  auto act = build_from_spec(cfg.builder);
  doc["builder"] = cfg.builder;
  doc["family"] = act.family;
  doc["degree"] = act.group.degree();
  doc["order"] = act.group.order().get_str();
  doc["order_formula"] = act.order_formula;
  if (do_sigma) {
    auto s = sigma_sets(act);
    json sets = json::array();
    for (auto &ss : s.sets) {
      json one = json::array();
      for (int p : ss) one.push_back(p + 1);
      sets.push_back(one);
    }
    doc["sigma"] = {{"sets", sets},       {"s", s.s},
                    {"t", s.t},           {"w", s.w},
                    {"w_prime", s.w_prime}, {"w_cap", s.w_cap},
                    {"base_mode", s.base_mode},
                    {"verified_trivial", s.verified_trivial}};
  }
  emit(cfg, doc);
  return 0;
}

int run_lattice(const Config &cfg, const std::string &field, bool minima,
                const std::string &count_h, bool mink, const std::string &hyper,
                long hyper_vars, const std::vector<std::string> &boxes) {
  json doc;
  doc["command"] = "lattice";
  if (!hyper.empty()) {
    IntPoly f = IntPoly::parse(hyper, (int)hyper_vars);
    std::vector<std::vector<long>> bs;
    for (auto &b : boxes) {
      auto dots = b.find("..");
      if (dots == std::string::npos)
        throw std::invalid_argument("box must be lo..hi, got " + b);
      long lo = std::stol(b.substr(0, dots)), hi = std::stol(b.substr(dots + 2));
      std::vector<long> v;
      for (long x = lo; x <= hi; ++x) v.push_back(x);
      bs.push_back(v);
    }
    auto r = hypersurface_avoidance_count(f, bs);
    doc["hypersurface"] = {{"degree", f.degree()},
                           {"nonzero", r.nonzero.get_str()},
                           {"lower_bound", r.lower_bound.get_str()},
                           {"ok", r.ok}};
    emit(cfg, doc);
    return 0;
  }
  if (field.empty()) throw std::invalid_argument("lattice needs --field or --hypersurface");
  Lattice L = field_lattice(field);
  doc["field"] = field;
  doc["rank"] = L.d;
  doc["signature"] = {L.r1, L.r2};
  doc["covol_sq"] = L.covol2.str();
  if (minima || mink) {
    auto rep = successive_minima(L);
    json lam = json::array();
    for (auto &l : rep.lambda_sq) lam.push_back(l.str());
    doc["lambda_sq"] = lam;
    doc["exhaustion_radius_sq"] = rep.exhaustion_radius_sq.get_str();
    if (mink) {
      auto chk = minkowski_second_check(L, rep);
      doc["minkowski"] = {{"holds", chk.holds},
                          {"lower_margin", chk.lower_margin},
                          {"upper_margin", chk.upper_margin}};
    }
  }
  if (!count_h.empty()) {
    Rat H = parse_rat(count_h);
    doc["count"] = count_points_in_box(L, H);
    doc["H"] = H.get_str();
  }
  emit(cfg, doc);
  return 0;
}

int run_bounds(const Config &cfg, const std::string &rk_tag,
               const std::string &transfer, const std::string &allfields) {
  json doc;
  doc["command"] = "bounds";
  if (!rk_tag.empty()) {
    auto e = rk_tilde(rk_tag, parse_params(cfg.params_str));
    doc["rk_tilde"] = exponent_json(e);
    emit(cfg, doc);
    return 0;
  }
  if (!allfields.empty()) {
    auto r = all_fields_check(Int(allfields));
    doc["all_fields"] = {{"X", r.x.get_str()},
                         {"n_max", r.n_max},
                         {"lhs_log", r.lhs_log},
                         {"rhs_log", r.rhs_log},
                         {"holds", r.holds}};
    emit(cfg, doc);
    return 0;
  }
  if (!cfg.stages.empty()) {
    std::vector<InductionStage> stages;
    std::istringstream ls(cfg.stages);
    std::string tok;
    while (std::getline(ls, tok, ';')) {
      std::istringstream ts(tok);
      std::string a, b, n;
      if (!std::getline(ts, a, ':') || !std::getline(ts, b, ':') ||
          !std::getline(ts, n, ':'))
        throw std::invalid_argument("stages must be a:b:n;...");
      stages.push_back({parse_rat(a), parse_rat(b), std::stol(n), std::nullopt});
    }
    auto B = induction_combine(stages, cfg.d);
    doc["bound"] = bound_json(B);
    emit(cfg, doc);
    return 0;
  }
  if (!transfer.empty()) {
    auto pm = parse_params(transfer);
    auto target = closed_form_bound(cfg.kind, parse_params(cfg.params_str));
    auto B = transfer_bound(target, pm.rat("swap"), pm.li("n1"), pm.li("n2"),
                            pm.big("G"), cfg.d);
    doc["bound"] = bound_json(B);
    emit(cfg, doc);
    return 0;
  }
  if (cfg.kind.empty()) throw std::invalid_argument("bounds needs --kind");
  auto B = closed_form_bound(cfg.kind, parse_params(cfg.params_str));
  doc["bound"] = bound_json(B);
  emit(cfg, doc);
  return 0;
}

int run_optimize(const Config &cfg, bool delta, const std::string &mathieu) {
  json doc;
  doc["command"] = "optimize";
  if (delta) {
    long nlo = cfg.n ? cfg.n : 20, nhi = cfg.n ? cfg.n : 85;
    auto rows = delta_table(nlo, nhi, Rat(cfg.d));
    json arr = json::array();
    for (auto &r : rows)
      arr.push_back({{"n", r.n},
                     {"w", r.w},
                     {"delta", r.delta.str()},
                     {"gamma", r.gamma.str()},
                     {"delta_at_d", r.delta_at_d.get_str()},
                     {"gamma_at_d", r.gamma_at_d.get_str()}});
    doc["d"] = cfg.d;
    doc["delta_table"] = arr;
    if (cfg.n) doc["delta"] = rows[0].delta_at_d.get_str();
    emit(cfg, doc);
    return 0;
  }
  if (!mathieu.empty()) {
    auto m = mathieu_bound(mathieu, Rat(cfg.d));
    doc["mathieu"] = {{"which", m.which},
                      {"lambda_x", m.opt.lambda_x.str()},
                      {"lambda_disc", m.opt.lambda_d.str()},
                      {"x_exponent", m.opt.a_star.str()},
                      {"disc_exponent", m.opt.b_star.str()},
                      {"x_exponent_at_d", m.x_exponent_at_d.get_str()},
                      {"monotone_ok", m.opt.monotone_ok}};
    emit(cfg, doc);
    return 0;
  }
  throw std::invalid_argument("optimize: choose --delta-table or --mathieu");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"computational toolkit for discriminant-counting bounds"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--group,--name", cfg.group_name, "catalog group name");
    sub->add_option("--builder", cfg.builder, "builder spec, e.g. linear:m=3,q=2,flavor=pgl");
    sub->add_option("--catalog", cfg.catalog_path, "catalog file override");
    sub->add_option("--seed", cfg.seed, "random seed (default 0)");
    sub->add_option("--max-degree", cfg.max_degree, "maximum invariant degree");
    sub->add_option("--modulus", cfg.moduli, "prime modulus (repeatable)");
    sub->add_flag("--json", cfg.json_mode, "emit one JSON document");
    sub->add_flag("--slow", cfg.slow, "allow slow computations");
    sub->add_option("--cache-dir", cfg.cache_dir, "profile cache directory");
    sub->add_option("--d", cfg.d, "base field degree d");
    sub->add_option("--n", cfg.n, "degree parameter n");
    sub->add_option("--kind", cfg.kind, "bound kind");
    sub->add_option("--params", cfg.params_str, "key=val,key=val parameters");
    sub->add_option("--variant", cfg.variant, "sigma construction variant: none|a|b");
  };

  bool exact_base = false, full_sweep = false, classes = false, do_export = false;
  auto *g = app.add_subcommand("group", "order, index, base, primitivity");
  add_common(g);
  g->add_flag("--exact-base", exact_base);
  g->add_flag("--full-index-sweep", full_sweep);
  g->add_flag("--classes", classes);
  g->add_flag("--export", do_export);

  bool minimal_profile = false, cumulative = false, construct = false, verify = false;
  int dimension = 0;
  auto *iv = app.add_subcommand("invariants", "profiles, dimensions, constructions");
  add_common(iv);
  iv->add_flag("--minimal-profile", minimal_profile);
  iv->add_option("--dimension", dimension);
  iv->add_flag("--cumulative", cumulative);
  iv->add_flag("--construct", construct);
  iv->add_flag("--verify", verify);

  bool do_sigma = false;
  std::string affine, diagonal, largeq;
  auto *ge = app.add_subcommand("geometry", "classical builders and recipes");
  add_common(ge);
  ge->add_flag("--sigma-sets", do_sigma);
  ge->add_option("--affine", affine, "g0=gl,m=2,p=3");
  ge->add_option("--diagonal", diagonal, "group name (A5 built in)");
  ge->add_option("--large-q", largeq, "m=2,q=23");

  std::string field, count_h, hyper;
  bool minima = false, mink = false;
  long hyper_vars = 1;
  std::vector<std::string> boxes;
  auto *la = app.add_subcommand("lattice", "minima, counts, checks");
  add_common(la);
  la->add_option("--field", field);
  la->add_flag("--minima", minima);
  la->add_option("--count", count_h, "gauge radius H");
  la->add_flag("--minkowski-check", mink);
  la->add_option("--hypersurface", hyper, "integer polynomial, vars x1..x4");
  la->add_option("--vars", hyper_vars);
  la->add_option("--box", boxes, "lo..hi (repeat per variable)");

  std::string rk_tag, transfer, allfields;
  auto *bo = app.add_subcommand("bounds", "closed forms, induction, transfer, rk~");
  add_common(bo);
  bo->add_option("--rk", rk_tag, "class tag for rk~");
  bo->add_option("--stages", cfg.stages, "induction stages a:b:n;a:b:n");
  bo->add_option("--transfer", transfer, "swap=..,n1=..,n2=..,G=..");
  bo->add_option("--all-fields", allfields, "X value for the assembly check");

  bool delta = false;
  std::string mathieu;
  auto *op = app.add_subcommand("optimize", "delta table and Mathieu exponents");
  add_common(op);
  op->add_flag("--delta-table", delta);
  op->add_option("--mathieu", mathieu, "M11 | M12");

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed()) return run_group(cfg, exact_base, full_sweep, classes, do_export);
    if (iv->parsed())
      return run_invariants(cfg,
                            minimal_profile || (cfg.max_degree > 0 && !construct &&
                                                dimension == 0),
                            dimension, cumulative, construct, verify);
    if (ge->parsed()) return run_geometry(cfg, do_sigma, affine, diagonal, largeq);
    if (la->parsed())
      return run_lattice(cfg, field, minima, count_h, mink, hyper, hyper_vars, boxes);
    if (bo->parsed()) return run_bounds(cfg, rk_tag, transfer, allfields);
    if (op->parsed()) return run_optimize(cfg, delta, mathieu);
  } catch (const ProbabilisticFailure &e) {
    std::cerr << "probabilistic failure: " << e.what() << "\n";
    return 5;
  } catch (const ResourceError &e) {
    std::cerr << "resource budget: " << e.what() << "\n";
    return 4;
  } catch (const HypothesisError &e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error &e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error &e) {
    std::cerr << "resource budget: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
