#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>

#include "cuspidal/cuspidal.hpp"

using namespace cuspidal;
namespace fs = std::filesystem;

namespace {

enum Exit { Ok = 0, Usage = 1, Disagreement = 2, Undetermined = 3 };

struct Options {
  std::string command;
  std::vector<std::string> files;
  std::string mode;
  int trunc = 0;
  unsigned long seed = 0;
  std::string out;
  double range = 0.5;
  int count = 40;
};

struct JobOutput {
  std::string report, csv;
  int status = Ok;
};

// pipeline errors carry the stage that raised them
struct StageError : std::runtime_error {
  int status;
  StageError(const std::string& stage, const std::string& msg, int st)
      : std::runtime_error(stage + ": " + msg), status(st) {}
};

template <class T>
std::string num(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  } else {
    return x.get_str();
  }
}

template <class T>
std::string rad(const Radical<T>& r) {
  if (auto e = r.exact()) return num(*e);
  return r.str() + " ~ " + num(r.to_double());
}

// exact value when rational, otherwise 17 significant digits
template <class T>
std::string csv_value(const Radical<T>& r) {
  if (auto e = r.exact()) return num(*e);
  return num(r.to_double());
}

std::string yesno(bool b) { return b ? "true" : "false"; }

template <class T>
bool is_identity(const AdaptedGerm<T>& g) {
  int N = g.u_of.trunc();
  return (g.u_of - Jet2<T>::u_var(N)).is_zero() && (g.v_of - Jet2<T>::v_var(N)).is_zero();
}

// rotation from a Pythagorean triple picked by the seed, applied in the xy and yz planes
template <class T>
SurfaceGerm<T> seeded_isometry(const SurfaceGerm<T>& f, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> d(1, 6);
  auto rot = [&](long p, long q, int a, int b, SurfaceGerm<T> g) {
    if (p == q) ++p;
    T c = Scalar<T>::from_frac(p * p - q * q, p * p + q * q), s = Scalar<T>::from_frac(2 * p * q, p * p + q * q);
    Jet2<T> x = g[a] * c - g[b] * s, y = g[a] * s + g[b] * c;
    g[a] = x;
    g[b] = y;
    return g;
  };
  long p1 = d(rng), q1 = d(rng), p2 = d(rng), q2 = d(rng);
  return rot(p2, q2, 1, 2, rot(p1, q1, 0, 1, f));
}

template <class T>
JobOutput run_surface(const GermSpec& spec, const Options& opt, std::string& stage) {
  JobOutput out;
  std::ostringstream rep;
  stage = "edge_model";
  auto f = spec_surface<T>(spec);
  auto cls = classify(f);
  if (opt.command == "classify") {
    rep << cls.summary() << "\n";
  } else if (opt.command == "invariants") {
    rep << cls.summary() << "\n";
    stage = "edge_invariants";
    auto inv = invariant_report(cls);
    for (const auto& [i, w] : inv.omega) rep << "omega_{" << inv.m << "," << inv.m + i << "}(0) = " << rad(w.at_zero()) << "\n";
    if (inv.beta_2m) rep << "beta_{" << inv.m << "," << 2 * inv.m << "}(0) = " << rad(*inv.beta_2m) << "\n";
    rep << "kappa_s(0) = " << rad(inv.curvatures.kappa_s0) << "\n";
    rep << "kappa_nu(0) = " << rad(inv.curvatures.kappa_nu0) << "\n";
    rep << "kappa_t(0) = " << num(inv.curvatures.kappa_t[0]) << "\n";
    if (inv.orders) rep << "ord K = " << inv.orders->ordK.str() << "\nord H = " << inv.orders->ordH.str() << "\n";
  } else if (opt.command == "orders" || opt.command == "verify") {
    stage = "edge_invariants";
    auto inv = invariant_report(cls);
    bool kn = !inv.curvatures.kappa_nu0.is_zero();
    auto g = gauss_mean_orders(cls.adapted.f, cls.m, cls.r, kn);
    rep << cls.summary() << "\n";
    rep << "ord K = " << g.ordK.str() << "\nord H = " << g.ordH.str() << "\n";
    if (opt.command == "verify") {
      if (!cls.r) throw StageError(stage, "not an (m,n)-edge within truncation", Undetermined);
      std::ostringstream csv;
      csv << "invariant,predicted,condition_value,computed,agrees\n";
      auto verdict = [](bool agrees, const OrderValue& v) {
        if (!v.exact) return Verdict::Inconclusive;
        return agrees ? Verdict::Agree : Verdict::Disagree;
      };
      std::vector<Verdict> vs;
      vs.push_back(verdict(g.H_agrees, g.ordH));
      csv << "ord_H," << exponent_str(*g.predicted_H) << ",," << g.ordH.str() << "," << to_string(vs.back()) << "\n";
      auto kn_str = csv_value(inv.curvatures.kappa_nu0);
      if (g.predicted_K) {
        vs.push_back(verdict(g.K_agrees, g.ordK));
        csv << "ord_K," << exponent_str(*g.predicted_K) << "," << kn_str << "," << g.ordK.str() << ","
            << to_string(vs.back()) << "\n";
      } else {
        csv << "ord_K,>" << exponent_str(Exponent(*cls.r - 2 * cls.m)) << "," << kn_str << "," << g.ordK.str() << ","
            << to_string(Verdict::Agree) << "\n";
      }
      stage = "edge_model";
      auto moved = classify(seeded_isometry(f, opt.seed));
      vs.push_back(moved.summary() == cls.summary() ? Verdict::Agree : Verdict::Disagree);
      csv << "isometry_class," << cls.summary() << ",," << moved.summary() << "," << to_string(vs.back()) << "\n";
      Verdict overall = Verdict::Agree;
      for (auto v : vs) {
        if (v == Verdict::Disagree) overall = v;
        if (v == Verdict::Inconclusive && overall == Verdict::Agree) overall = v;
      }
      out.status = overall == Verdict::Agree ? Ok : overall == Verdict::Inconclusive ? Undetermined : Disagreement;
      rep << "status: " << (out.status == Ok ? "OK" : out.status == Undetermined ? "INCONCLUSIVE" : "DISAGREE") << "\n";
      out.csv = csv.str();
    }
  } else {
    throw StageError("cli", "'" + opt.command + "' needs a curve-on-surface spec", Usage);
  }
  out.report = rep.str();
  return out;
}

template <class T>
JobOutput run_plane_curve(const GermSpec& spec, const Options& opt, std::string& stage) {
  JobOutput out;
  std::ostringstream rep;
  stage = "plane_curves";
  auto c = spec_curve<T>(spec);
  PlaneCurve<T> g{c[0], c[1]};
  auto nf = curve_normal_form(g);
  if (opt.command == "classify") {
    rep << "m=" << nf.m << (nf.n ? " n=" + std::to_string(*nf.n) : " n>" + std::to_string(nf.valid)) << "\n";
  } else if (opt.command == "invariants") {
    rep << "m=" << nf.m << (nf.n ? " n=" + std::to_string(*nf.n) : " n>" + std::to_string(nf.valid)) << "\n";
    for (auto& [i, beta] : nf.biases()) rep << "beta_{" << nf.m << "," << i * nf.m << "} = " << rad(beta) << "\n";
    if (nf.n) {
      rep << "r_{" << nf.m << "," << *nf.n << "} = " << rad(nf.r()) << "\n";
      if (!(nf.m % 2 == 0 && *nf.n % 2 == 0)) rep << "bias: " << to_string(bias_behavior(g).label) << "\n";
    }
  } else if (opt.command == "verify") {
    if (!nf.n) throw StageError(stage, "n undetermined within truncation", Undetermined);
    auto closed = r_closed_form_general(g), normal = nf.r();
    double a = closed.to_double(), b = normal.to_double();
    bool agrees = std::fabs(a - b) <= 1e-10 * std::max(1.0, std::fabs(a));
    if (auto e1 = closed.exact(), e2 = normal.exact(); e1 && e2) agrees = *e1 == *e2;
    std::ostringstream csv;
    csv << "invariant,predicted,condition_value,computed,agrees\n";
    csv << "r_" << nf.m << "_" << *nf.n << "," << csv_value(closed) << ",," << csv_value(normal) << "," << yesno(agrees)
        << "\n";
    rep << "r_{" << nf.m << "," << *nf.n << "} = " << rad(normal) << "\nstatus: " << (agrees ? "OK" : "DISAGREE") << "\n";
    out.status = agrees ? Ok : Disagreement;
    out.csv = csv.str();
  } else {
    throw StageError("cli", "'" + opt.command + "' needs a surface or curve-on-surface spec", Usage);
  }
  out.report = rep.str();
  return out;
}

template <class T>
JobOutput run_curve_on_surface(const GermSpec& spec, const Options& opt, std::string& stage) {
  JobOutput out;
  std::ostringstream rep;
  stage = "edge_model";
  auto f = spec_surface<T>(spec);
  auto cls = classify(f);
  if (!is_identity(cls.adapted))
    throw StageError(stage, "surface must be given in adapted coordinates (S(f) = {v=0}, null field d/dv)", Usage);
  auto c = spec_curve<T>(spec);
  stage = "curve_on_edge";
  auto contact = contact_data(cls.adapted.f, cls.m, c[0], c[1]);
  auto sc = space_curve(contact);
  auto computed = kg_kn_tg(sc);
  rep << cls.summary() << "\n";
  rep << "l=" << contact.l << " k=" << computed.k << "\n";
  if (opt.command == "classify") {
  } else if (opt.command == "invariants") {
    auto oc = check_orders(cls.adapted.f, cls.m, c[0], c[1]);
    rep << "kappa_s(0) = " << num(oc.data.kappa_s) << "\nkappa_nu(0) = " << num(oc.data.kappa_nu)
        << "\nkappa_t(0) = " << num(oc.data.kappa_t) << "\nomega(0) = " << num(oc.data.omega) << "\n";
    rep << "K2 = " << num(oc.curve.K2) << "\nK1 = " << num(oc.curve.K1) << "\n";
    auto nc = normalized_kg_kn_tg(space_curve(oc.curve));
    rep << "normalized kappa_g(0) = " << num(nc.lemma_at_zero.kappa_g) << "\nnormalized kappa_n(0) = "
        << num(nc.lemma_at_zero.kappa_n) << "\nnormalized tau_g(0) = " << num(nc.lemma_at_zero.tau_g) << "\n";
  } else if (opt.command == "orders") {
    const LaurentInvariant* li[3] = {&computed.kappa_g, &computed.kappa_n, &computed.tau_g};
    const char* names[3] = {"kappa_g", "kappa_n", "tau_g"};
    for (int i = 0; i < 3; ++i) rep << names[i] << ": ord " << li[i]->ord.str() << " " << to_string(boundedness(li[i]->ord)) << "\n";
  } else if (opt.command == "verify") {
    auto vr = verify_orders(cls.adapted.f, cls.m, c[0], c[1]);
    std::ostringstream csv;
    csv << "invariant,predicted,condition_value,computed,agrees\n";
    auto emit = [&](const std::vector<VerifyRow>& rows, const std::string& suffix) {
      for (const auto& r : rows)
        csv << r.invariant << suffix << "," << r.predicted << "," << r.condition_value << "," << r.computed << ","
            << to_string(r.verdict) << "\n";
    };
    emit(vr.rows, "");
    emit(vr.flipped_rows, "_flipped");
    for (const auto& r : vr.rows) rep << r.invariant << ": predicted " << r.predicted << " computed " << r.computed << "\n";
    Verdict v = vr.overall();
    out.status = v == Verdict::Agree ? Ok : v == Verdict::Inconclusive ? Undetermined : Disagreement;
    rep << "status: " << (v == Verdict::Agree ? "OK" : v == Verdict::Inconclusive ? "INCONCLUSIVE" : "DISAGREE") << "\n";
    out.csv = csv.str();
  } else if (opt.command == "sample") {
    std::ostringstream csv;
    csv << "t,kappa_g,kappa_n,tau_g\n";
    T range = Scalar<T>::from_double(opt.range);
    for (int i = -opt.count; i <= opt.count; ++i) {
      if (i == 0) continue;
      T t = Scalar<T>::from_frac(i, opt.count) * range;
      auto p = evaluate_at(sc, t);
      csv << num(t) << "," << num(p.kappa_g) << "," << num(p.kappa_n) << "," << num(p.tau_g) << "\n";
    }
    rep << "rows: " << 2 * opt.count << "\n";
    out.csv = csv.str();
  }
  out.report = rep.str();
  return out;
}

template <class T>
JobOutput run_typed(const GermSpec& spec, const Options& opt, std::string& stage) {
  switch (spec.kind) {
    case GermKind::Surface: return run_surface<T>(spec, opt, stage);
    case GermKind::PlaneCurve: return run_plane_curve<T>(spec, opt, stage);
    case GermKind::CurveOnSurface: return run_curve_on_surface<T>(spec, opt, stage);
  }
  return {};
}

JobOutput run_job(const std::string& path, const Options& opt) {
  JobOutput out;
  std::string stage = "parse";
  std::ostringstream head;
  head << "job: " << fs::path(path).filename().string() << "\n";
  try {
    std::ifstream in(path);
    if (!in) throw StageError("cli", "cannot read " + path, Usage);
    std::stringstream buf;
    buf << in.rdbuf();
    GermSpec spec = parse_spec(buf.str());
    if (!opt.mode.empty()) spec.mode = opt.mode == "float" ? Mode::Float : Mode::Rational;
    if (opt.trunc > 0) {
      for (const auto* terms : {&spec.surface[0], &spec.surface[1], &spec.surface[2], &spec.curve[0], &spec.curve[1]})
        for (const auto& t : *terms)
          if (t.i + t.j > opt.trunc)
            throw ParseError(t.line, "monomial degree exceeds trunc " + std::to_string(opt.trunc));
      spec.trunc = opt.trunc;
    }
    head << "kind: " << to_string(spec.kind)
         << "\nmode: " << (spec.mode == Mode::Float ? "float" : "rational") << "\ntrunc: " << spec.trunc
         << "\nseed: " << opt.seed << "\n";
    out = spec.mode == Mode::Float ? run_typed<double>(spec, opt, stage) : run_typed<Rational>(spec, opt, stage);
  } catch (const StageError& e) {
    out.report = std::string("error: ") + e.what() + "\n";
    out.status = e.status;
  } catch (const ParseError& e) {
    out.report = std::string("error: parse: ") + e.what() + "\n";
    out.status = Usage;
  } catch (const Inconclusive& e) {
    out.report = "error: " + stage + ": inconclusive: " + e.what() + "\n";
    out.status = Undetermined;
  } catch (const NeedsFloat& e) {
    out.report = "error: " + stage + ": " + e.what() + " (rerun with --mode float)\n";
    out.status = Usage;
  } catch (const Error& e) {
    out.report = "error: " + stage + ": " + e.what() + "\n";
    out.status = Usage;
  }
  out.report = head.str() + out.report;
  return out;
}

void write_atomic(const fs::path& target, const std::string& data) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw std::runtime_error("cannot write " + tmp.string());
    o << data;
  }
  fs::rename(tmp, target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuspidal edge germs: classification, invariants and order checks"};
  app.require_subcommand(1, 1);
  Options opt;
  for (const char* name : {"classify", "invariants", "orders", "verify", "sample"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("spec", opt.files, "germ-spec files")->required()->check(CLI::ExistingFile);
    sub->add_option("--mode", opt.mode, "rational or float")->check(CLI::IsMember({"rational", "float"}));
    sub->add_option("--trunc", opt.trunc, "truncation order")->check(CLI::Range(2, 200));
    sub->add_option("--seed", opt.seed, "seed for randomized checks");
    sub->add_option("--out", opt.out, "CSV output file, or directory for several specs");
    if (std::string(name) == "sample") {
      sub->add_option("--range", opt.range, "sample t in [-range, range]")->check(CLI::PositiveNumber);
      sub->add_option("--count", opt.count, "samples per side")->check(CLI::Range(1, 100000));
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : Usage;
  }
  opt.command = app.get_subcommands().front()->get_name();

  std::vector<std::future<JobOutput>> jobs;
  for (const auto& f : opt.files) jobs.push_back(std::async(std::launch::async, run_job, f, std::cref(opt)));
  int status = Ok;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    JobOutput r = jobs[i].get();
    std::cout << r.report;
    if (!r.csv.empty()) {
      if (opt.out.empty()) {
        std::cout << r.csv;
      } else {
        try {
          fs::path target = opt.out;
          if (opt.files.size() > 1) {
            fs::create_directories(target);
            target /= fs::path(opt.files[i]).stem().string() + "." + opt.command + ".csv";
          }
          write_atomic(target, r.csv);
        } catch (const std::exception& e) {
          std::cout << "error: cli: " << e.what() << "\n";
          r.status = Usage;
        }
      }
    }
    if (i + 1 < jobs.size()) std::cout << "\n";
    auto rank = [](int s) { return s == Disagreement ? 3 : s == Undetermined ? 2 : s; };
    if (rank(r.status) > rank(status)) status = r.status;
  }
  return status;
}
