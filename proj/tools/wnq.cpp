// wnq: exact computations for the simple transposed Poisson algebras W_n(q)
// over prime fields. Exit status: 0 = property holds / success, 1 = property
// fails (witness printed), 2 = usage error, 3 = undecided or resource limit.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tpa/element.hpp"
#include "tpa/json_io.hpp"
#include "tpa/reps.hpp"
#include "tpa/superalg.hpp"
#include "tpa/zassenhaus.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace tpa;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kUndecided = 3;

json witness_json(const IdentityWitness& w) {
  return json{{"tuple", w.tuple}, {"residual", w.residual}};
}

json report_json(const IdentityReport& r) {
  json out{{"identity", r.identity_id}, {"holds", r.holds}};
  if (r.witness) out["witness"] = witness_json(*r.witness);
  return out;
}

void print_report(const IdentityReport& r, bool as_json) {
  if (as_json) {
    std::cout << report_json(r).dump(2) << "\n";
    return;
  }
  if (r.holds) {
    std::cout << r.identity_id << ": holds\n";
  } else {
    std::cout << r.identity_id << ": FAILS at tuple (";
    for (std::size_t i = 0; i < r.witness->tuple.size(); ++i)
      std::cout << (i ? "," : "") << r.witness->tuple[i];
    std::cout << "), residual " << print_element(r.witness->residual) << "\n";
  }
}

struct Options {
  std::uint32_t p = 5;
  std::uint32_t n = 1;
  std::string q_text = "e-1";
  std::string q2_text;
  std::string a_text = "0";
  std::string qinv_text;
  std::string file;
  std::string out;
  std::string identity;
  std::string product = "bracket";
  std::uint64_t seed = 0;
  std::size_t budget = 500;
  std::size_t dec_budget = 16;
  bool as_json = false;
  bool tp_suite = false;
};

int cmd_gen(const Options& o) {
  ZassenhausPair Z = build_zassenhaus(o.p, o.n);
  TwoProductAlgebra A = mutate(Z, parse_element(o.q_text, o.p, Z.N));
  std::string doc = save_algebra(A);
  if (o.out.empty())
    std::cout << doc;
  else
    write_file(o.out, doc);
  return kOk;
}

int cmd_verify(const Options& o) {
  TwoProductAlgebra A = load_algebra(read_file(o.file));
  IdentityReport r =
      (!o.identity.empty() && !o.tp_suite) ? check_identity(A, o.identity) : check_tp_axioms(A);
  print_report(r, o.as_json);
  return r.holds ? kOk : kFail;
}

int cmd_decompose(const Options& o) {
  TwoProductAlgebra A = load_algebra(read_file(o.file));
  DecompositionResult dec = decompose(A, o.seed, o.dec_budget);
  bool exact = reassemble(A, dec).circ == A.circ && reassemble(A, dec).bracket == A.bracket;
  if (o.as_json) {
    json out{{"blocks", json::array()}, {"reassembly_exact", exact}};
    for (const auto& b : dec.blocks) {
      json jb{{"kind", b.kind == BlockKind::unital ? "unital" : "nilpotent"},
              {"dim", b.space.dim()},
              {"basis", b.space.basis}};
      if (b.unit) jb["unit"] = *b.unit;
      out["blocks"].push_back(std::move(jb));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << dec.blocks.size() << " blocks";
    for (const auto& b : dec.blocks)
      std::cout << " [" << (b.kind == BlockKind::unital ? "unital" : "nilpotent") << " dim "
                << b.space.dim() << "]";
    std::cout << (exact ? ", reassembly exact" : ", REASSEMBLY MISMATCH") << "\n";
  }
  return exact ? kOk : kFail;
}

int cmd_halfder(const Options& o) {
  TwoProductAlgebra A = load_algebra(read_file(o.file));
  if (o.product != "circ" && o.product != "bracket")
    throw std::invalid_argument("halfder: --product must be circ or bracket");
  Subspace S = half_derivations(A, o.product == "circ" ? Product::circ : Product::bracket);
  if (o.as_json)
    std::cout << json{{"product", o.product}, {"dim", S.dim()}, {"basis", S.basis}}.dump(2)
              << "\n";
  else
    std::cout << "half-derivations of " << o.product << ": dim " << S.dim() << "\n";
  return kOk;
}

int cmd_tpspace(const Options& o) {
  TwoProductAlgebra L =
      o.file.empty() ? bracket_only_algebra(build_zassenhaus(o.p, o.n))
                     : load_algebra(read_file(o.file));
  std::vector<StructureTensor> sols = tp_structures_on(L);
  if (o.as_json)
    std::cout << json{{"dim", sols.size()}}.dump(2) << "\n";
  else
    std::cout << "transposed Poisson structures: solution space dim " << sols.size() << "\n";
  return kOk;
}

int cmd_normalform(const Options& o) {
  ZassenhausPair Z = build_zassenhaus(o.p, o.n);
  Vec q = parse_element(o.q_text, o.p, Z.N);
  NormalFormResult nf = normal_form(Z, q);
  if (o.as_json) {
    json out{{"q_nf", print_element(nf.q_nf)},
             {"steps", nf.trace.size()},
             {"leading_coeff_one", nf.leading_coeff_one}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "normal form: " << print_element(nf.q_nf) << " (" << nf.trace.size()
              << " steps" << (nf.leading_coeff_one ? "" : ", leading coefficient not scalable to 1")
              << ")\n";
  }
  return kOk;
}

int cmd_isocheck(const Options& o) {
  ZassenhausPair Z = build_zassenhaus(o.p, o.n);
  Vec q = parse_element(o.q_text, o.p, Z.N);
  Vec q2 = parse_element(o.q2_text, o.p, Z.N);
  auto params = brute_force_iso(Z, q, q2, o.budget);
  if (params) {
    if (o.as_json)
      std::cout << json{{"isomorphic", true}, {"alpha", params->alpha}}.dump(2) << "\n";
    else
      std::cout << "isomorphic via alpha = " << print_element(params->alpha) << "\n";
    return kOk;
  }
  if (o.as_json)
    std::cout << json{{"isomorphic", false}}.dump(2) << "\n";
  else
    std::cout << "no admissible isomorphism found (exhaustive within budget)\n";
  return kFail;
}

int cmd_rep(const Options& o) {
  ZassenhausPair Z = build_zassenhaus(o.p, o.n);
  Representation R =
      build_M(Z, parse_element(o.q_text, o.p, Z.N), parse_element(o.a_text, o.p, Z.N));
  IdentityReport r = check_representation(R);
  print_report(r, o.as_json);
  return r.holds ? kOk : kFail;
}

int cmd_irr(const Options& o) {
  ZassenhausPair Z = build_zassenhaus(o.p, o.n);
  Representation R =
      build_M(Z, parse_element(o.q_text, o.p, Z.N), parse_element(o.a_text, o.p, Z.N));
  IrreducibilityResult res = irreducible(R, o.seed);
  const char* verdict = res.verdict == Irreducibility::irreducible ? "irreducible"
                        : res.verdict == Irreducibility::reducible ? "reducible"
                                                                   : "undecided";
  if (o.as_json) {
    json out{{"verdict", verdict}, {"envelope_dim", res.envelope_dim}};
    if (res.witness) out["witness_dim"] = res.witness->dim();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << verdict << " (envelope dim " << res.envelope_dim << ")";
    if (res.witness) std::cout << ", invariant subspace of dim " << res.witness->dim();
    std::cout << "\n";
  }
  switch (res.verdict) {
    case Irreducibility::irreducible:
      return kOk;
    case Irreducibility::reducible:
      return kFail;
    case Irreducibility::undecided:
      return kUndecided;
  }
  return kUndecided;
}

int cmd_kantor(const Options& o) {
  ZassenhausPair Z = build_zassenhaus(o.p, o.n);
  TwoProductAlgebra A = mutate(Z, parse_element(o.q_text, o.p, Z.N));
  SuperAlgebra S = kantor_double(A);
  if (!o.out.empty()) write_file(o.out, superalgebra_to_json(S).dump(2) + "\n");
  IdentityReport r = check_jordan_super(S);
  print_report(r, o.as_json);
  return r.holds ? kOk : kFail;
}

int cmd_weakleibniz(const Options& o) {
  TwoProductAlgebra A = [&] {
    if (!o.file.empty()) return load_algebra(read_file(o.file));
    ZassenhausPair Z = build_zassenhaus(o.p, o.n);
    return mutate(Z, parse_element(o.q_text, o.p, Z.N));
  }();
  IdentityReport r = check_weak_leibniz(depolarize(A));
  print_report(r, o.as_json);
  return r.holds ? kOk : kFail;
}

int cmd_qpdiag(const Options& o) {
  ZassenhausPair Z = build_zassenhaus(o.p, o.n);
  Vec q;
  if (!o.qinv_text.empty()) {
    auto inv = bullet_inverse(Z, parse_element(o.qinv_text, o.p, Z.N));
    if (!inv) throw std::invalid_argument("qpdiag: --q-inverse element is not bullet-invertible");
    q = *inv;
  } else {
    q = parse_element(o.q_text, o.p, Z.N);
  }
  QpResult res = qp_operator(mutate(Z, q));
  if (res.diagnosis == QpDiagnosis::diagonalizable) {
    if (o.as_json) {
      std::cout << json{{"diagnosis", "diagonalizable"}, {"spectrum", res.spectrum}}.dump(2)
                << "\n";
    } else {
      std::cout << "diagonalizable, spectrum = {";
      for (std::size_t i = 0; i < res.spectrum.size(); ++i)
        std::cout << (i ? "," : "") << res.spectrum[i];
      std::cout << "}\n";
    }
  } else if (res.diagnosis == QpDiagnosis::nilpotent) {
    std::size_t index = 1;
    FpMatrix P = res.Q;
    while (!P.is_zero()) {
      P = P * res.Q;
      ++index;
    }
    if (o.as_json)
      std::cout << json{{"diagnosis", "nilpotent"}, {"index", index}}.dump(2) << "\n";
    else
      std::cout << "nilpotent (index " << index << ")\n";
  } else {
    if (o.as_json)
      std::cout << json{{"diagnosis", "neither"},
                        {"min_poly", res.minimal_polynomial.coeffs}}
                       .dump(2)
                << "\n";
    else {
      std::cout << "neither diagonalizable nor nilpotent; minimal polynomial coefficients [";
      for (std::size_t i = 0; i < res.minimal_polynomial.coeffs.size(); ++i)
        std::cout << (i ? "," : "") << res.minimal_polynomial.coeffs[i];
      std::cout << "] (lowest degree first)\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wnq: exact algebra for the transposed Poisson family W_n(q) over F_p"};
  app.require_subcommand(1);
  Options o;

  auto add_pn = [&](CLI::App* c) {
    c->add_option("--p", o.p, "odd prime");
    c->add_option("--n", o.n, "height (dimension p^n)");
  };
  auto add_json = [&](CLI::App* c) { c->add_flag("--json", o.as_json, "machine-readable output"); };

  CLI::App* gen = app.add_subcommand("gen", "emit W_n(q) as a JSON document");
  add_pn(gen);
  gen->add_option("--q", o.q_text, "mutation element");
  gen->add_option("--out", o.out, "output file (stdout if omitted)");

  CLI::App* verify = app.add_subcommand("verify", "check identities on a JSON algebra");
  verify->add_option("file", o.file, "algebra document")->required();
  verify->add_option("--identity", o.identity, "single identity id");
  verify->add_flag("--tp", o.tp_suite, "full transposed Poisson axiom suite (default)");
  add_json(verify);

  CLI::App* dec = app.add_subcommand("decompose", "unital/nilpotent block decomposition");
  dec->add_option("file", o.file, "algebra document")->required();
  dec->add_option("--seed", o.seed, "seed for randomized splitting elements");
  dec->add_option("--budget", o.dec_budget, "random candidate budget");
  add_json(dec);

  CLI::App* hd = app.add_subcommand("halfder", "half-derivation space of a product");
  hd->add_option("file", o.file, "algebra document")->required();
  hd->add_option("--product", o.product, "circ or bracket");
  add_json(hd);

  CLI::App* tps = app.add_subcommand("tpspace", "transposed Poisson structures on a Lie bracket");
  add_pn(tps);
  tps->add_option("file", o.file, "algebra document (default: W(1;n) bracket)");
  add_json(tps);

  CLI::App* nf = app.add_subcommand("normalform", "normal form of q under admissible maps");
  add_pn(nf);
  nf->add_option("--q", o.q_text, "element")->required();
  add_json(nf);

  CLI::App* iso = app.add_subcommand("isocheck", "exhaustive admissible isomorphism search");
  add_pn(iso);
  iso->add_option("--q", o.q_text, "first element")->required();
  iso->add_option("--q2", o.q2_text, "second element")->required();
  iso->add_option("--budget", o.budget, "candidate budget");
  add_json(iso);

  CLI::App* rep = app.add_subcommand("rep", "build and check the representation M_q(a)");
  add_pn(rep);
  rep->add_option("--q", o.q_text, "mutation element");
  rep->add_option("--a", o.a_text, "twisting element a");
  add_json(rep);

  CLI::App* irr = app.add_subcommand("irr", "irreducibility of M_q(a)");
  add_pn(irr);
  irr->add_option("--q", o.q_text, "mutation element");
  irr->add_option("--a", o.a_text, "twisting element a");
  irr->add_option("--seed", o.seed, "seed for the randomized tier");
  add_json(irr);

  CLI::App* kan = app.add_subcommand("kantor", "Kantor double and graded Jordan check");
  add_pn(kan);
  kan->add_option("--q", o.q_text, "mutation element");
  kan->add_option("--out", o.out, "save the double as JSON");
  add_json(kan);

  CLI::App* wl = app.add_subcommand("weakleibniz", "depolarize and check weak-Leibniz");
  add_pn(wl);
  wl->add_option("--q", o.q_text, "mutation element");
  wl->add_option("file", o.file, "algebra document (overrides --p/--n/--q)");
  add_json(wl);

  CLI::App* qp = app.add_subcommand("qpdiag", "distinguished operator Q = ad(1) diagnostics");
  add_pn(qp);
  qp->add_option("--q", o.q_text, "mutation element (must be invertible)");
  qp->add_option("--q-inverse", o.qinv_text, "element whose bullet inverse is used as q");
  add_json(qp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(o);
    if (verify->parsed()) return cmd_verify(o);
    if (dec->parsed()) return cmd_decompose(o);
    if (hd->parsed()) return cmd_halfder(o);
    if (tps->parsed()) return cmd_tpspace(o);
    if (nf->parsed()) return cmd_normalform(o);
    if (iso->parsed()) return cmd_isocheck(o);
    if (rep->parsed()) return cmd_rep(o);
    if (irr->parsed()) return cmd_irr(o);
    if (kan->parsed()) return cmd_kantor(o);
    if (wl->parsed()) return cmd_weakleibniz(o);
    if (qp->parsed()) return cmd_qpdiag(o);
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kUndecided;
  } catch (const DecompositionError& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
