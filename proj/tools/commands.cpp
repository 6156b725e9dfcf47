#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sl2r/clebsch_gordan.hpp"
#include "sl2r/coupling.hpp"
#include "sl2r/jordan_schwinger.hpp"
#include "sl2r/tridiag.hpp"
#include "sl2r/wigner_eckart.hpp"

namespace sl2r::cli {

RepLabel resolve_label(const LabelArgs& a) {
  const bool exact = a.two_j.has_value();
  const bool cplx = a.j_re.has_value() || a.j_im.has_value();
  if (exact && cplx) throw Error(ErrorKind::Parse, "--two-j cannot be combined with --j-re/--j-im");
  if (!exact && !cplx) throw Error(ErrorKind::Parse, "a spin is required: --two-j or --j-re/--j-im");
  RepClass cls = parse_rep_class(a.cls);
  Complex j = exact ? HalfInt::from_twice(*a.two_j).complex() : Complex(a.j_re.value_or(0.0), a.j_im.value_or(0.0));
  switch (cls) {
    case RepClass::Finite: return RepLabel::finite(HalfInt::from_double(j.real()));
    case RepClass::DiscretePos: return RepLabel::discrete_pos(HalfInt::from_double(j.real()));
    case RepClass::DiscreteNeg: return RepLabel::discrete_neg(HalfInt::from_double(j.real()));
    case RepClass::Continuous: return RepLabel::continuous(j, HalfInt::parse(a.eps));
  }
  throw Error(ErrorKind::Parse, "unknown class");
}

WeightWindow parse_window(const std::string& text, int margin) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::Parse, "window must look like a:b");
  WeightWindow w{HalfInt::parse(text.substr(0, colon)), HalfInt::parse(text.substr(colon + 1)), margin};
  if (w.m_max < w.m_min) throw Error(ErrorKind::Parse, "window has m_max < m_min");
  return w;
}

int default_count(const RepLabel& label) { return label.cls == RepClass::Continuous ? 31 : 30; }

WeightWindow resolve_window(const RepLabel& label, const LabelArgs& a) {
  if (a.margin < 0) throw Error(ErrorKind::Parse, "--margin must be non-negative");
  if (a.window.empty()) return default_window(label, default_count(label), a.margin);
  WeightWindow w = parse_window(a.window, a.margin);
  if (!(w.m_min - lattice_offset(label)).is_integer()) {
    throw Error(ErrorKind::EmptyDomain, "window endpoints are off the weight lattice of " + label.str());
  }
  return w;
}

namespace {

std::string format_name(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Text: return "text";
  }
  return "json";
}

Json config_echo(const RunConfig& cfg) {
  Json c;
  c["command"] = cfg.command;
  c["class"] = cfg.label.cls;
  if (cfg.label.two_j) c["two_j"] = *cfg.label.two_j;
  if (cfg.label.j_re) c["j_re"] = *cfg.label.j_re;
  if (cfg.label.j_im) c["j_im"] = *cfg.label.j_im;
  c["epsilon"] = cfg.label.eps;
  c["window"] = cfg.label.window.empty() ? Json(nullptr) : Json(cfg.label.window);
  c["margin"] = cfg.label.margin;
  c["gamma"] = cfg.gamma;
  c["tolerance"] = cfg.tol > 0 ? Json(cfg.tol) : Json("default");
  c["format"] = format_name(cfg.format);
  c["seed"] = cfg.seed;
  return c;
}

double tol_or(const RunConfig& cfg, double fallback) { return cfg.tol > 0 ? cfg.tol : fallback; }

void print_report_text(std::ostream& out, const VerificationReport& r) {
  out << r.subject() << ": " << (r.passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& x : r.residuals()) {
    out << "  " << x.name << "  " << x.value << "  (tol " << x.tolerance << ")  " << (x.passed() ? "ok" : "FAIL")
        << '\n';
  }
  for (const auto& [k, v] : r.metadata()) out << "  # " << k << " = " << v << '\n';
}

int emit_report(std::ostream& out, std::ostream& err, const RunConfig& cfg, const VerificationReport& r,
                Json extra = Json::object()) {
  if (cfg.format == Format::Text) {
    print_report_text(out, r);
  } else {
    extra["report"] = report_to_json(r);
    out << envelope(cfg, std::move(extra)).dump(2) << '\n';
  }
  if (!r.passed()) {
    for (const auto& f : r.residuals()) {
      if (!f.passed()) err << "verification failed: " << f.name << " = " << f.value << " exceeds " << f.tolerance << '\n';
    }
    return kVerificationFailed;
  }
  return kOk;
}

Json not_decomposable_json(const NotDecomposableError& e) {
  Json j;
  j["decomposable"] = false;
  j["reason"] = std::string(to_string(e.reason()));
  j["reason_detail"] = e.detail();
  return j;
}

int report_not_decomposable(std::ostream& out, std::ostream& err, const RunConfig& cfg,
                            const NotDecomposableError& e) {
  if (cfg.format != Format::Text && cfg.format != Format::Csv) {
    out << envelope(cfg, not_decomposable_json(e)).dump(2) << '\n';
  }
  err << "not decomposable: " << e.detail() << " (" << to_string(e.reason()) << ")\n";
  return kNotDecomposable;
}

CouplingSpec spec_from(const RunConfig& cfg) {
  RepLabel label = resolve_label(cfg.label);
  return CouplingSpec{HalfInt::parse(cfg.gamma), label, resolve_window(label, cfg.label)};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

TensorOperator read_operator(const std::string& path) {
  Json j = read_json_file(path);
  return tensor_from_json(j.contains("operator") ? j.at("operator") : j);
}

// ---- cg-table / decompose --------------------------------------------------

VerificationReport table_checks(const CGTable& t, const RunConfig& cfg) {
  VerificationReport r("clebsch-gordan checks");
  r.merge(verify_orthogonality(t, tol_or(cfg, 1e-10)), "orthogonality");
  r.merge(verify_recursion(t, tol_or(cfg, 1e-9)), "recursion");
  r.merge(verify_ratio(t, tol_or(cfg, 1e-8)), "ratio");
  return r;
}

int cmd_cg_table(const RunConfig& cfg, bool closed_form, bool check, std::ostream& out, std::ostream& err) {
  CouplingSpec spec = spec_from(cfg);
  CGTable table = closed_form ? CGTable::closed_form(spec) : CGTable::from_decomposition(decompose(spec));
  if (cfg.format == Format::Csv) {
    out << table_to_csv(table);
    if (check) {
      auto r = table_checks(table, cfg);
      print_report_text(err, r);
      return r.passed() ? kOk : kVerificationFailed;
    }
    return kOk;
  }
  if (cfg.format == Format::Text) {
    out << "gamma " << spec.gamma.str() << " inner " << spec.inner.str() << " M " << table.M_min().str() << ".."
        << table.M_max().str() << '\n';
    for (const auto& l : table.labels()) out << "  component " << l.str() << '\n';
    if (check) {
      auto r = table_checks(table, cfg);
      print_report_text(out, r);
      return r.passed() ? kOk : kVerificationFailed;
    }
    return kOk;
  }
  Json payload;
  payload["table"] = table_to_json(table);
  if (!check) {
    out << envelope(cfg, std::move(payload)).dump(2) << '\n';
    return kOk;
  }
  return emit_report(out, err, cfg, table_checks(table, cfg), std::move(payload));
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  CouplingSpec spec = spec_from(cfg);
  DecompositionResult d = decompose(spec);
  if (cfg.format == Format::Text) {
    out << "decomposable via " << (d.path_used == DecomposePath::LowestWeight ? "lowest-weight" : "ladder")
        << " path (" << d.verdict.detail << ")\n";
    for (const auto& l : d.labels) out << "  " << l.str() << '\n';
    out << "  label deficit " << d.label_deficit << ", M " << d.M_min.str() << ".." << d.M_max.str() << '\n';
    return kOk;
  }
  Json payload;
  payload["decomposition"] = decomposition_to_json(d);
  payload["path"] = d.path_used == DecomposePath::LowestWeight ? "lowest-weight" : "ladder";
  out << envelope(cfg, std::move(payload)).dump(2) << '\n';
  return kOk;
}

// ---- spectrum --------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg, const std::string& block, std::ostream& out) {
  CouplingSpec spec = spec_from(cfg);
  validate(spec);
  HalfInt lo, hi;
  if (!block.empty()) {
    lo = hi = HalfInt::parse(block);
  } else {
    std::tie(lo, hi) = emitted_range(spec);
  }
  Json blocks = Json::array();
  Json defective = Json::array();
  for (HalfInt M = lo; M <= hi; M += 1) {
    auto cb = casimir_block(spec, M);
    Json b;
    b["M"] = M.str();
    b["dim"] = cb.basis.size();
    Json ev = Json::array();
    for (Complex z : block_eigenvalues(cb)) ev.push_back(complex_to_json(z));
    b["eigenvalues"] = std::move(ev);
    Json pred = Json::array();
    for (Complex z : predicted_block_spectrum(spec.gamma, spec.inner, M)) pred.push_back(complex_to_json(z));
    b["predicted"] = std::move(pred);
    b["spectral_residual"] = spectral_residual(spec, M);
    Json mult = Json::array();
    bool any_defect = false;
    for (const auto& e : jordan_defect(spec, M)) {
      Json m;
      m["eigenvalue"] = complex_to_json(e.eigenvalue);
      m["algebraic"] = e.algebraic;
      m["geometric"] = e.geometric;
      m["geometric_dense"] = e.geometric_dense;
      m["defective"] = e.geometric < e.algebraic;
      any_defect = any_defect || e.geometric < e.algebraic;
      mult.push_back(std::move(m));
    }
    b["multiplicities"] = std::move(mult);
    if (any_defect) defective.push_back(M.str());
    blocks.push_back(std::move(b));
  }
  if (cfg.format == Format::Text) {
    for (const auto& b : blocks) {
      out << "M " << b["M"].get<std::string>() << " dim " << b["dim"].get<int>() << '\n';
      for (const auto& m : b["multiplicities"]) {
        out << "  " << format_complex(complex_from_json(m["eigenvalue"])) << "  alg " << m["algebraic"].get<int>()
            << " geo " << m["geometric"].get<int>() << (m["defective"].get<bool>() ? "  DEFECTIVE" : "") << '\n';
      }
    }
    return kOk;
  }
  Json payload;
  payload["decomposable"] = is_decomposable(spec.gamma, spec.inner).decomposable;
  payload["defective_blocks"] = std::move(defective);
  payload["blocks"] = std::move(blocks);
  out << envelope(cfg, std::move(payload)).dump(2) << '\n';
  return kOk;
}

// ---- verify ----------------------------------------------------------------

std::vector<std::string> split_suites(const std::string& text) {
  static const std::vector<std::string> all = {"commutator", "orthogonality", "recursion", "ratio",
                                               "we",         "js",            "tridiag"};
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item == "none") continue;
    if (item == "all") return all;
    if (std::find(all.begin(), all.end(), item) == all.end()) throw Error(ErrorKind::Parse, "unknown suite " + item);
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  return out;
}

VerificationReport tridiag_suite(const CouplingSpec& spec, std::uint64_t seed, double tol) {
  VerificationReport r("tridiagonal kernel");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(1, 16);
  std::normal_distribution<double> gauss;
  int disagreements = 0, over_one = 0, trials = 100;
  for (int t = 0; t < trials; ++t) {
    const int n = size(rng);
    std::vector<Complex> a, b, c;
    for (int i = 0; i < n; ++i) b.emplace_back(gauss(rng), gauss(rng));
    for (int i = 0; i + 1 < n; ++i) {
      a.emplace_back(gauss(rng), gauss(rng));
      c.emplace_back(gauss(rng), gauss(rng));
    }
    Tridiagonal tri(a, b, c);
    Eigen::MatrixXcd dense = tri.dense();
    for (Complex lam : dense_eigenvalues(dense)) {
      int k = kernel_dim(tri, lam);
      if (k > 1) ++over_one;
      if (k != dense_kernel_dim(dense, lam)) ++disagreements;
    }
  }
  int block_checks = 0;
  if (is_decomposable(spec.gamma, spec.inner).decomposable) {
    auto [lo, hi] = emitted_range(spec);
    for (HalfInt M = lo; M <= hi; M += 1) {
      auto cb = casimir_block(spec, M);
      for (Complex q : block_eigenvalues(cb)) {
        ++block_checks;
        if (kernel_dim(cb.matrix, q) != 1) ++over_one;
      }
    }
  }
  r.add("kernel_dim > 1", over_one, tol);
  r.add("kernel_dim vs dense rank", disagreements, tol);
  r.note("random_matrices", std::to_string(trials));
  r.note("casimir_eigenvalues", std::to_string(block_checks));
  return r;
}

VerificationReport we_suite(const CouplingSpec& spec, const CGTable& table, double tol) {
  VerificationReport r("wigner-eckart");
  auto V = generator_vector_operator(spec.inner, spec.window);
  r.merge(check_tensor_op(V, tol), "generator operator");
  const RepLabel& target = table.labels().front();
  const Complex N(1.0, 0.5);
  OperatorSpace src{spec.inner, spec.window};
  WeightWindow tw = spec.window;
  tw.m_min = tw.m_min - spec.gamma;
  tw.m_max = tw.m_max + spec.gamma;
  if ((tw.m_min - lattice_offset(target)).is_integer()) tw = clip_window(target, tw);
  auto T = synthesize(spec.gamma, src, {target, tw}, N);
  auto t2 = table_for(T);
  auto red = reduced_matrix_element(T, t2, target.j);
  r.add("synthesize/reduce |N - N'|", std::abs(red.value - N), tol);
  r.merge(we_reconstruct(T, t2, tol), "reconstruct");
  r.note("target", target.str());
  return r;
}

VerificationReport js_suite(const RepLabel& label, const WeightWindow& w, double tol) {
  VerificationReport r("jordan-schwinger");
  auto pair = js_pair(label, w);
  r.merge(reconstruct_generators(pair, tol), "generators");
  r.merge(heisenberg_check(pair, tol), "heisenberg");
  auto osc = oscillator_form(pair, std::max(tol, 1e-11));
  if (auto* real = std::get_if<OscillatorRealization>(&osc)) {
    r.merge(real->report, "oscillator");
  } else {
    const auto& o = std::get<Obstruction>(osc);
    r.note("obstruction", o.component + " not real at m = " + o.m_not_real.str() + ", not imaginary at m = " +
                              o.m_not_imaginary.str());
  }
  return r;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite_text, std::optional<double> perturb,
               std::ostream& out, std::ostream& err) {
  auto suites = split_suites(suite_text);
  VerificationReport report("verify");
  if (suites.empty()) {
    err << "warning: empty suite selection, no checks run\n";
    Json payload;
    payload["suites"] = Json::array();
    payload["checks"] = 0;
    if (cfg.format == Format::Text) {
      out << "no checks run\n";
    } else {
      out << envelope(cfg, std::move(payload)).dump(2) << '\n';
    }
    return kOk;
  }
  CouplingSpec spec = spec_from(cfg);
  auto wants = [&](const std::string& s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };
  std::optional<CGTable> table;
  auto need_table = [&]() -> const CGTable& {
    if (!table) {
      table = CGTable::from_decomposition(decompose(spec));
      if (perturb) {
        HalfInt M = table->M_min() + steps_between(table->M_min(), table->M_max()) / 2;
        table = table->with_perturbation(M, 0, 0, *perturb);
        report.note("perturbation", "A(0,0) at M = " + M.str() + " shifted by " + format_complex(*perturb));
      }
    }
    return *table;
  };
  if (wants("commutator")) {
    auto rep = realize(spec.inner, spec.window);
    report.merge(check_structure(rep, tol_or(cfg, 1e-12)), "commutator");
    report.merge(real_form_check(rep, tol_or(cfg, 1e-12)), "commutator");
  }
  if (wants("orthogonality")) report.merge(verify_orthogonality(need_table(), tol_or(cfg, 1e-10)), "orthogonality");
  if (wants("recursion")) report.merge(verify_recursion(need_table(), tol_or(cfg, 1e-9)), "recursion");
  if (wants("ratio")) report.merge(verify_ratio(need_table(), tol_or(cfg, 1e-8)), "ratio");
  if (wants("we")) report.merge(we_suite(spec, need_table(), tol_or(cfg, 1e-9)), "we");
  if (wants("js")) report.merge(js_suite(spec.inner, spec.window, tol_or(cfg, 1e-10)), "js");
  if (wants("tridiag")) report.merge(tridiag_suite(spec, cfg.seed, 0.0), "tridiag");
  Json payload;
  payload["suites"] = suites;
  payload["checks"] = report.residuals().size();
  return emit_report(out, err, cfg, report, std::move(payload));
}

// ---- we --------------------------------------------------------------------

int cmd_we_synth(const RunConfig& cfg, const std::string& nu_text, Complex N, std::ostream& out) {
  CouplingSpec spec = spec_from(cfg);
  HalfInt nu = HalfInt::parse(nu_text);
  auto comps = component_labels(spec.gamma, spec.inner);
  std::optional<RepLabel> target;
  for (std::size_t k = 0; k < comps.labels.size(); ++k) {
    if (comps.offsets[k] == nu) target = comps.labels[k];
  }
  if (!target) throw Error(ErrorKind::OutOfRange, "no component j + " + nu.str() + " in the decomposition");
  WeightWindow tw = spec.window;
  if (spec.inner.cls != RepClass::Finite) {
    tw.m_min = tw.m_min - spec.gamma;
    tw.m_max = tw.m_max + spec.gamma;
    tw = clip_window(*target, tw);
  }
  auto T = synthesize(spec.gamma, {spec.inner, spec.window}, {*target, tw}, N);
  Json payload;
  payload["reduced_element"] = complex_to_json(N);
  payload["operator"] = tensor_to_json(T);
  out << envelope(cfg, std::move(payload)).dump(2) << '\n';
  return kOk;
}

int cmd_we_check(const RunConfig& cfg, const std::string& input, std::ostream& out, std::ostream& err) {
  TensorOperator T = read_operator(input);
  VerificationReport r("tensor operator check");
  r.merge(check_tensor_op(T, tol_or(cfg, 1e-9)), "commutation");
  r.merge(we_reconstruct(T, table_for(T), tol_or(cfg, 1e-9)), "wigner-eckart");
  return emit_report(out, err, cfg, r);
}

int cmd_we_reduce(const RunConfig& cfg, const std::string& input, std::ostream& out, std::ostream& err) {
  TensorOperator T = read_operator(input);
  CGTable table = table_for(T);
  WEOptions opts;
  if (cfg.tol > 0) opts.inconsistency_tol = cfg.tol;
  Json elems = Json::array();
  int status = kOk;
  for (const auto& lab : table.labels()) {
    Json e;
    e["label"] = label_to_json(lab);
    auto est = estimate_reduced_element(T, table, lab.j);
    e["value"] = complex_to_json(est.value);
    e["spread"] = est.spread;
    e["off_axis"] = est.off_axis;
    e["samples"] = est.samples;
    double scale = std::max(1.0, std::abs(est.value));
    bool ok = est.spread <= opts.inconsistency_tol * scale && est.off_axis <= opts.inconsistency_tol * scale;
    e["consistent"] = ok;
    if (!ok) {
      err << "inconsistent reduced element for " << lab.str() << '\n';
      status = kVerificationFailed;
    }
    elems.push_back(std::move(e));
  }
  if (cfg.format == Format::Text) {
    for (const auto& e : elems) {
      out << label_from_json(e["label"]).str() << "  " << format_complex(complex_from_json(e["value"]))
          << (e["consistent"].get<bool>() ? "" : "  INCONSISTENT") << '\n';
    }
  } else {
    Json payload;
    payload["reduced_elements"] = std::move(elems);
    out << envelope(cfg, std::move(payload)).dump(2) << '\n';
  }
  return status;
}

// ---- js --------------------------------------------------------------------

Json space_json(const OperatorSpace& s) { return {{"label", label_to_json(s.label)}, {"window", window_to_json(s.window)}}; }

int cmd_js_build(const RunConfig& cfg, std::ostream& out) {
  RepLabel label = resolve_label(cfg.label);
  auto pair = js_pair(label, resolve_window(label, cfg.label));
  Json payload;
  payload["base"] = space_json({pair.base, pair.window});
  payload["up"] = space_json(pair.up);
  payload["down"] = pair.down ? space_json(*pair.down) : Json(nullptr);
  payload["T"] = tensor_to_json(js_tensor_T(pair));
  payload["T_tilde"] = pair.down ? tensor_to_json(js_tensor_Ttilde(pair)) : Json(nullptr);
  out << envelope(cfg, std::move(payload)).dump(2) << '\n';
  return kOk;
}

int cmd_js_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RepLabel label = resolve_label(cfg.label);
  auto pair = js_pair(label, resolve_window(label, cfg.label));
  VerificationReport r("jordan-schwinger " + label.str());
  r.merge(reconstruct_generators(pair, tol_or(cfg, 1e-12)), "generators");
  r.merge(heisenberg_check(pair, tol_or(cfg, 1e-12)), "heisenberg");
  r.merge(check_tensor_op(js_tensor_T(pair), tol_or(cfg, 1e-9)), "T");
  if (pair.down) r.merge(check_tensor_op(js_tensor_Ttilde(pair), tol_or(cfg, 1e-9)), "T~");
  return emit_report(out, err, cfg, r);
}

int cmd_js_oscillator(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RepLabel label = resolve_label(cfg.label);
  auto pair = js_pair(label, resolve_window(label, cfg.label));
  auto result = oscillator_form(pair, tol_or(cfg, 1e-11));
  if (auto* real = std::get_if<OscillatorRealization>(&result)) {
    Json payload;
    payload["realization"] = true;
    return emit_report(out, err, cfg, real->report, std::move(payload));
  }
  const auto& o = std::get<Obstruction>(result);
  if (cfg.format == Format::Text) {
    out << "obstruction: " << o.component << " is not real at m = " << o.m_not_real.str() << " ("
        << format_complex(o.value_not_real) << ") and not imaginary at m = " << o.m_not_imaginary.str() << " ("
        << format_complex(o.value_not_imaginary) << ")\n";
    return kOk;
  }
  Json ob;
  ob["component"] = o.component;
  ob["m_not_real"] = o.m_not_real.str();
  ob["value_not_real"] = complex_to_json(o.value_not_real);
  ob["m_not_imaginary"] = o.m_not_imaginary.str();
  ob["value_not_imaginary"] = complex_to_json(o.value_not_imaginary);
  ob["within_window"] = o.within_window;
  Json payload;
  payload["realization"] = false;
  payload["obstruction"] = std::move(ob);
  out << envelope(cfg, std::move(payload)).dump(2) << '\n';
  return kOk;
}

void add_label_options(CLI::App* app, LabelArgs& a) {
  app->add_option("--class", a.cls, "finite, dplus, dminus or continuous")->capture_default_str();
  app->add_option("--two-j", a.two_j, "twice the spin, for real half-integer spins");
  app->add_option("--j-re", a.j_re, "real part of the spin");
  app->add_option("--j-im", a.j_im, "imaginary part of the spin");
  app->add_option("--eps", a.eps, "parity of a continuous label (0 or 1/2)")->capture_default_str();
  app->add_option("--window", a.window, "weight window m_min:m_max");
  app->add_option("--margin", a.margin, "interior margin")->capture_default_str();
}

void add_common(CLI::App* app, RunConfig& cfg, std::string& format) {
  add_label_options(app, cfg.label);
  app->add_option("--gamma", cfg.gamma, "spin of the finite factor")->capture_default_str();
  app->add_option("--format", format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app->add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();
  app->add_option("--tol", cfg.tol, "pass tolerance for every residual");
  app->add_flag("--timing", cfg.timing, "include wall-clock time in the report");
}

}  // namespace

Json envelope(const RunConfig& cfg, Json payload) {
  Json out;
  out["command"] = cfg.command;
  out["version"] = kVersion;
  out["config"] = config_echo(cfg);
  for (auto it = payload.begin(); it != payload.end(); ++it) out[it.key()] = it.value();
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sl(2,R) recoupling: Clebsch-Gordan tables, tensor operators, Jordan-Schwinger checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  bool closed_form = false, check = false;
  std::string suite = "all", block, input, nu = "1/2";
  std::optional<double> perturb;
  double n_re = 1.0, n_im = 0.0;

  auto* cg = app.add_subcommand("cg-table", "emit Clebsch-Gordan coefficients");
  add_common(cg, cfg, format);
  cg->add_flag("--closed-form", closed_form, "use the tabulated formulas (gamma 1/2 or 1)");
  cg->add_flag("--check", check, "run orthogonality, recursion and ratio checks");

  auto* dec = app.add_subcommand("decompose", "decompose F_gamma (x) rho");
  add_common(dec, cfg, format);

  auto* ver = app.add_subcommand("verify", "run verification suites");
  add_common(ver, cfg, format);
  ver->add_option("--suite", suite,
                  "comma list of commutator, orthogonality, recursion, ratio, we, js, tridiag; all or none")
      ->capture_default_str();
  ver->add_option("--perturb", perturb, "shift one coefficient of the table before checking");

  auto* spec = app.add_subcommand("spectrum", "eigenvalues and multiplicities of the Casimir blocks");
  add_common(spec, cfg, format);
  spec->add_option("--M", block, "single block instead of the emitted range");

  auto* we = app.add_subcommand("we", "tensor operators and reduced matrix elements");
  we->require_subcommand(1);
  auto* we_synth = we->add_subcommand("synth", "build T from a reduced element");
  add_common(we_synth, cfg, format);
  we_synth->add_option("--nu", nu, "target component j + nu")->capture_default_str();
  we_synth->add_option("--n-re", n_re, "reduced element, real part")->capture_default_str();
  we_synth->add_option("--n-im", n_im, "reduced element, imaginary part")->capture_default_str();
  auto* we_check = we->add_subcommand("check", "check a tensor operator read from JSON");
  add_common(we_check, cfg, format);
  we_check->add_option("--input", input, "operator JSON")->required();
  auto* we_reduce = we->add_subcommand("reduce", "extract reduced elements from JSON");
  add_common(we_reduce, cfg, format);
  we_reduce->add_option("--input", input, "operator JSON")->required();

  auto* js = app.add_subcommand("js", "Jordan-Schwinger construction");
  js->require_subcommand(1);
  auto* js_build = js->add_subcommand("build", "emit T and T~");
  add_common(js_build, cfg, format);
  auto* js_verify = js->add_subcommand("verify", "generator and commutator checks");
  add_common(js_verify, cfg, format);
  auto* js_osc = js->add_subcommand("oscillator", "oscillator form or reality obstruction");
  add_common(js_osc, cfg, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return kUsage;
  }

  cfg.format = format == "csv" ? Format::Csv : format == "text" ? Format::Text : Format::Json;
  if (cfg.tol < 0) {
    err << "error: --tol must be positive\n";
    return kUsage;
  }
  if (cfg.tol == 0) {
    if (const char* env = std::getenv("SL2R_TOL")) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v > 0)) {
        err << "error: SL2R_TOL must be a positive number\n";
        return kUsage;
      }
      cfg.tol = v;
    }
  }

  const auto start = std::chrono::steady_clock::now();
  std::ostringstream buffer;
  int code = kOk;
  try {
    if (cg->parsed()) {
      cfg.command = "cg-table";
      code = cmd_cg_table(cfg, closed_form, check, buffer, err);
    } else if (dec->parsed()) {
      cfg.command = "decompose";
      code = cmd_decompose(cfg, buffer);
    } else if (ver->parsed()) {
      cfg.command = "verify";
      code = cmd_verify(cfg, suite, perturb, buffer, err);
    } else if (spec->parsed()) {
      cfg.command = "spectrum";
      code = cmd_spectrum(cfg, block, buffer);
    } else if (we_synth->parsed()) {
      cfg.command = "we synth";
      code = cmd_we_synth(cfg, nu, {n_re, n_im}, buffer);
    } else if (we_check->parsed()) {
      cfg.command = "we check";
      code = cmd_we_check(cfg, input, buffer, err);
    } else if (we_reduce->parsed()) {
      cfg.command = "we reduce";
      code = cmd_we_reduce(cfg, input, buffer, err);
    } else if (js_build->parsed()) {
      cfg.command = "js build";
      code = cmd_js_build(cfg, buffer);
    } else if (js_verify->parsed()) {
      cfg.command = "js verify";
      code = cmd_js_verify(cfg, buffer, err);
    } else if (js_osc->parsed()) {
      cfg.command = "js oscillator";
      code = cmd_js_oscillator(cfg, buffer, err);
    }
  } catch (const NotDecomposableError& e) {
    std::ostringstream o;
    code = report_not_decomposable(o, err, cfg, e);
    buffer.str(o.str());
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Inconsistency || e.kind() == ErrorKind::Conditioning ? kVerificationFailed
                                                                                       : kUsage;
  }

  std::string text = buffer.str();
  if (cfg.timing && cfg.format == Format::Json && !text.empty()) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json j = Json::parse(text);
    j["wall_clock_s"] = secs;
    text = j.dump(2) + "\n";
  }
  out << text;
  return code;
}

}  // namespace sl2r::cli
