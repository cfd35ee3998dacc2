// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ia3/autfn.hpp"
#include "ia3/bracketmap.hpp"
#include "ia3/embedded_data.hpp"
#include "ia3/glrep.hpp"
#include "ia3/lie.hpp"
#include "ia3/properties.hpp"
#include "ia3/relations.hpp"
#include "ia3/report.hpp"
#include "json.hpp"

namespace ia3 {

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading " + path.string());
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("error writing " + path.string());
}

struct DataSources {
  std::optional<std::filesystem::path> relators;  // embedded copy when empty
  std::optional<std::filesystem::path> table1;
  std::uint64_t seed = 20260101;
  std::size_t property_count = 1000;
};

// Lazily computed inputs shared by the suites of one run.
class Session {
 public:
  explicit Session(DataSources sources = {}) : sources_(std::move(sources)) {}

  const DataSources& sources() const noexcept { return sources_; }

  const std::vector<RelatorSpec>& relators() {
    if (!relators_)
      relators_ = sources_.relators ? load_relators(std::string_view(read_text_file(*sources_.relators))) : default_relators();
    return *relators_;
  }
  const std::vector<Table1Row>& table1() {
    if (!table1_) table1_ = sources_.table1 ? load_table1(read_text_file(*sources_.table1)) : default_table1();
    return *table1_;
  }
  const BracketMatrix& bracket_matrix() {
    if (!matrix_) matrix_ = build_bracket_matrix(relators());
    return *matrix_;
  }
  const InjectivityReport& injectivity() {
    if (!injectivity_) injectivity_ = verify_injectivity(bracket_matrix());
    return *injectivity_;
  }
  const CokernelReport& cokernel_report() {
    if (!cokernel_) cokernel_ = cokernel(bracket_matrix());
    return *cokernel_;
  }
  const Table1Report& table1_report() {
    if (!table1_report_) table1_report_ = table1_verify(bracket_matrix(), table1());
    return *table1_report_;
  }

  nlohmann::json data_facts() const {
    return {{"relators", sources_.relators ? sources_.relators->string() : "embedded"},
            {"table1", sources_.table1 ? sources_.table1->string() : "embedded"}};
  }

 private:
  DataSources sources_;
  std::optional<std::vector<RelatorSpec>> relators_;
  std::optional<std::vector<Table1Row>> table1_;
  std::optional<BracketMatrix> matrix_;
  std::optional<InjectivityReport> injectivity_;
  std::optional<CokernelReport> cokernel_;
  std::optional<Table1Report> table1_report_;
};

namespace detail {

struct SubChecks {
  nlohmann::json items = nlohmann::json::array();
  bool all = true;

  void add(const std::string& what, bool ok, nlohmann::json details = nullptr) {
    nlohmann::json j = {{"check", what}, {"ok", ok}};
    if (!details.is_null()) j["details"] = std::move(details);
    items.push_back(std::move(j));
    all = all && ok;
  }
  Check finish(std::string id, std::string summary) const {
    return {std::move(id), status_of(all), std::move(summary), {{"subchecks", items}}};
  }
};

}  // namespace detail

// Witt ranks against the generated Hall bases.
inline Check criterion_witt() {
  detail::SubChecks s;
  const struct {
    AlphabetPtr alphabet;
    int k;
    long long expected;
  } cases[] = {{magnus_alphabet(3), 2, 36}, {magnus_alphabet(3), 3, 240}, {free_basis(3), 2, 3}, {free_basis(3), 3, 8}};
  for (const auto& c : cases) {
    const int n = static_cast<int>(c.alphabet->size());
    const BigInt w = witt_rank(n, c.k);
    const std::size_t basis = lie_algebra(c.alphabet)->dimension(c.k);
    s.add("witt_rank(" + std::to_string(n) + "," + std::to_string(c.k) + ") = " + std::to_string(c.expected),
          w == c.expected && basis == static_cast<std::size_t>(c.expected),
          {{"witt_rank", w.str()}, {"hall_basis_size", basis}});
  }
  return s.finish("C1", "Witt ranks and Hall basis sizes");
}

inline Check criterion_relators(Session& session) {
  detail::SubChecks s;
  std::vector<LieVector> classes;
  for (const auto& spec : session.relators()) {
    const bool identity = verify_relator(spec.word);
    const LieVector c = degree2_class_of(spec.word);
    s.add(spec.id + " is a relator with the stated class", identity && c == spec.stated_class,
          {{"identity", identity}, {"class", c.to_json()}, {"commutator_subgroup", exponent_sums_vanish(spec.word)}});
    classes.push_back(c);
  }
  s.add("18 relators", session.relators().size() == 18, {{"count", session.relators().size()}});
  const std::size_t rank = rank_exact(class_matrix(classes));
  s.add("classes have rank 18", rank == 18, {{"rank", rank}});
  const Rational f3 = relator_rank_formula(3), f4 = relator_rank_formula(4);
  s.add("rank formula at n=3 is 18", f3 == 18, {{"n3", to_fraction_string(f3)}, {"n4", to_fraction_string(f4)}});
  return s.finish("C2", "relators evaluate to the identity with the stated degree-2 classes");
}

// tau_1(K_ij) = x_i* (x) [x_i,x_j], tau_1(K_ijl) = x_i* (x) [x_j,x_l].
inline Check criterion_johnson() {
  detail::SubChecks s;
  const AlphabetPtr mag = magnus_alphabet(3), f = free_basis(3);
  const auto x = [&](int i) { return LieVector::generator(f, f->names()[i - 1]); };
  for (std::size_t g = 0; g < mag->size(); ++g) {
    const MagnusLetter m = parse_magnus_letter(*mag, mag->gen(g), 1);
    JohnsonImage expected = JohnsonImage::zero(3, 2);
    std::vector<LieVector> comps = expected.components();
    comps[m.i - 1] = m.l ? bracket(x(m.j), x(*m.l)) : bracket(x(m.i), x(m.j));
    expected = JohnsonImage(std::move(comps));
    const JohnsonImage got = tau(magnus_gen(m), 1);
    s.add(m.name(), got == expected, got.to_json());
  }
  return s.finish("C3", "first Johnson images of the nine Magnus generators");
}

inline Check criterion_bracket(Session& session) {
  detail::SubChecks s;
  const auto& inj = session.injectivity();
  const auto& ck = session.cokernel_report();
  const auto& bm = session.bracket_matrix();
  s.add("matrix is 240 x 162", bm.matrix.rows() == 240 && bm.matrix.cols() == 162,
        {{"rows", bm.matrix.rows()}, {"cols", bm.matrix.cols()}});
  s.add("rank 162 (injective)", inj.rank == 162 && inj.injective(), {{"rank", inj.rank}});
  s.add("rank modulo 2^61-1 agrees", inj.rank_mod_p == inj.rank, {{"rank_mod_p", inj.rank_mod_p}});
  s.add("SNF rank agrees with exact rank", ck.rank() == inj.rank, {{"snf_rank", ck.rank()}});
  s.add("cokernel rank 78", ck.cokernel_rank() == 78, {{"cokernel_rank", ck.cokernel_rank()}});
  nlohmann::json torsion = nlohmann::json::array();
  for (const auto& t : ck.torsion()) torsion.push_back(t.str());
  s.add("all invariant factors are 1 (cokernel is free)", ck.free(),
        {{"invariant_factors", ck.snf.invariant_factors.size()}, {"torsion", torsion}});
  s.add("[r,K12] columns have rank 18", inj.k12_subrank == 18, {{"rank", inj.k12_subrank}});
  s.add("dropping " + inj.dropped_relator + " leaves rank 153", inj.drop_one_rank == 153, {{"rank", inj.drop_one_rank}});
  return s.finish("C4", "bracket map rank and Smith normal form");
}

inline Check criterion_table1(Session& session) {
  detail::SubChecks s;
  const Table1Report& t = session.table1_report();
  s.add("240 records", t.records == 240, {{"records", t.records}});
  s.add("162 marked, 78 unmarked", t.marked == 162 && t.unmarked == 78, {{"marked", t.marked}, {"unmarked", t.unmarked}});
  s.add("rows are exactly the Hall basis", t.duplicates.empty() && t.missing.empty(),
        {{"duplicates", t.duplicates}, {"missing", t.missing}});
  s.add("augmented matrix has rank 240", t.augmented_rank == 240,
        {{"rank", t.augmented_rank}, {"det", t.augmented_det.str()}});
  s.add("augmented matrix is unimodular", abs(t.augmented_det) == 1, {{"det", t.augmented_det.str()}});
  s.add("every marked tree has an integral certificate", t.failures.empty() && t.certified == t.marked,
        {{"certified", t.certified}, {"failures", t.failures}});
  return s.finish("C5", "unmarked transcribed trees form a basis of the cokernel");
}

inline Check criterion_theorem(Session& session) {
  detail::SubChecks s;
  for (const Check& c : theorem_main1_suite(session.bracket_matrix()))
    s.add("(" + c.id + ") " + c.summary, c.status == Status::Pass, c.details);
  return s.finish("C6", "new [3,2,-2] component in the cokernel");
}

struct DecompositionCase {
  std::string name;
  Decomposition computed;
  Decomposition expected;
};

inline std::vector<DecompositionCase> decomposition_cases() {
  const Weight one{{1, 0, 0}}, k{{1, 1, -1}}, ll{{1, 1, 0}}, t{{2, 1, -1}}, l3{{1, 1, 1}}, s3{{3, 0, 0}}, f21{{2, 1, 0}},
      p{{2, 2, -1}}, q{{3, 1, -1}}, r{{3, 2, -2}};
  std::vector<DecompositionCase> out;
  out.push_back({"W", decompose_char(module_char("W")), make_decomposition({{one, 1}, {k, 1}})});
  out.push_back({"Lambda2W", decompose_char(module_char("Lambda2W")), make_decomposition({{ll, 2}, {t, 2}})});
  out.push_back({"Lambda2[1,1,-1]", ext_decompose(k, 2), make_decomposition({{t, 1}})});
  out.push_back({"[3,2]x[2,2]", tensor_decompose({{3, 2, 0}}, {{2, 2, 0}}),
                 make_decomposition({{{{5, 2, 2}}, 1}, {{{4, 3, 2}}, 1}, {{{5, 3, 1}}, 1}, {{{5, 4, 0}}, 1}, {{{4, 4, 1}}, 1}})});
  out.push_back({"Lambda3[1,1,-1]", ext_decompose(k, 3), make_decomposition({{s3, 1}, {p, 1}})});
  out.push_back({"Lambda3W", decompose_char(module_char("Lambda3W")),
                 make_decomposition({{l3, 1}, {f21, 2}, {s3, 1}, {p, 3}, {q, 1}})});
  out.push_back({"LF3", decompose_char(module_char("LF3")),
                 make_decomposition({{s3, 1}, {f21, 6}, {l3, 1}, {p, 3}, {q, 3}, {r, 2}})});
  out.push_back({"[1]x[1,1,-1]", tensor_decompose(one, k), make_decomposition({{ll, 1}, {t, 1}})});
  out.push_back({"Lambda2W x W", decompose_char(module_char("Lambda2W") * module_char("W")),
                 make_decomposition({{s3, 2}, {f21, 8}, {l3, 2}, {p, 6}, {q, 4}, {r, 2}})});
  return out;
}

inline Check criterion_decompositions() {
  detail::SubChecks s;
  for (const auto& c : decomposition_cases()) {
    s.add(c.name + " = " + c.expected.to_string(), c.computed == c.expected,
          {{"computed", c.computed.to_json()}, {"dim", c.computed.dimension().str()}});
  }
  // Dimension column of the highest-weight tables: iota1, K312, v1..v4.
  const std::vector<long long> expected_dims = {3, 6, 3, 3, 15, 15};
  std::vector<long long> dims;
  for (const auto& v : highest_weight_vectors()) dims.push_back(static_cast<long long>(weyl_dim(v.expected_weight)));
  s.add("dimension column 3, 6, 3, 3, 15, 15", dims == expected_dims, {{"dims", dims}});
  return s.finish("C7", "irreducible decompositions");
}

inline Check criterion_highest_weight(Session& session) {
  detail::SubChecks s;
  const WModule& wm = w_module();
  const auto vectors = highest_weight_vectors();
  for (const auto& v : vectors) {
    const auto w = wm.is_highest_weight(v.vector);
    s.add(v.name + " is highest weight " + v.expected_weight.to_string(), w == v.expected_weight,
          {{"vector", v.vector.to_json()}, {"weight", w ? w->to_string() : "none"}});
  }
  auto find = [&](const std::string& name) -> const NamedVector& {
    for (const auto& v : vectors)
      if (v.name == name) return v;
    throw std::logic_error("missing vector " + name);
  };
  for (const char* name : {"v1", "v2", "v3", "v4"}) {
    const NamedVector& v = find(name);
    const bool member = membership_in_R_R3(v.vector, session.relators()).has_value();
    const bool expect_member = v.name == "v2" || v.name == "v4";
    if (v.name != "v3")
      s.add(v.name + (expect_member ? " lies" : " does not lie") + " in the span of the relator classes",
            member == expect_member);
    if (v.name != "v3") {
      const JohnsonImage j = johnson_sum(v.lift);
      s.add("tau_2 " + std::string(expect_member ? "vanishes" : "does not vanish") + " on the lift of " + v.name,
            j.is_zero() == expect_member, j.to_json());
    }
  }
  for (const auto& [a, b] : {std::pair{"v1", "v2"}, std::pair{"v3", "v4"}}) {
    RationalMatrix m(2, find(a).vector.dense().size());
    const auto da = find(a).vector.dense(), db = find(b).vector.dense();
    for (std::size_t c = 0; c < da.size(); ++c) {
      m(0, c) = da[c];
      m(1, c) = db[c];
    }
    s.add(std::string(a) + ", " + b + " are independent", rank_exact(m) == 2);
  }
  return s.finish("C8", "highest weight vectors in W and Lambda2W");
}

inline Check criterion_corollary(Session& session) {
  detail::SubChecks s;
  const auto c = corollary_arithmetic(session.injectivity().rank, session.relators().size(), 9,
                                      lie_algebra(magnus_alphabet(3))->dimension(3));
  s.add("240 - 197 = 43", c.lf3 - c.bound == c.external_gr3 && c.bound == 197, {{"bound", c.bound}});
  s.add("197 = 162 + 35", c.bound == c.image_rank + c.new_component && c.image_rank == 162,
        {{"image_rank", c.image_rank}, {"new_component", c.new_component.str()}});
  s.add("9 * 18 = 162", c.dual_dim == 162 && c.dual_dim == c.image_rank, {{"dual_dim", c.dual_dim}});
  Check out = s.finish("C9", "dimension bookkeeping with external input 43");
  out.details["external_input"] = c.external_gr3;
  return out;
}

inline Check criterion_properties(const DataSources& src) {
  detail::SubChecks s;
  for (const auto& r : props::run_all(src.seed, src.property_count))
    s.add(r.name, r.ok() && r.instances >= 1000, props::to_json(r));
  Check out = s.finish("C10", "randomized property suites");
  out.details["seed"] = src.seed;
  return out;
}

// Findings: data and text discrepancies resolved in this implementation.
inline std::vector<Check> relator_findings(Session& session) {
  std::vector<Check> out;
  nlohmann::json literal = nlohmann::json::array();
  bool any_relator = false;
  for (const auto& spec : session.relators()) {
    if (spec.templ != RelatorTemplate::R2) continue;
    const Word w = template_word(RelatorTemplate::R2Literal, spec.indices[0], spec.indices[1], spec.indices[2]);
    const bool rel = verify_relator(w);
    any_relator = any_relator || rel;
    literal.push_back({{"id", spec.id}, {"word", w.to_string()}, {"relator", rel}});
  }
  out.push_back({"F.r2-literal", Status::Finding,
                 any_relator ? "some literal R2 instantiations are relators"
                             : "the literal R2 template [K_ik K_kj, K_ij] gives no relators; [K_ik K_jk, K_ij] is used",
                 {{"instances", literal}}});

  nlohmann::json multi = nlohmann::json::array();
  for (const auto& spec : session.relators()) {
    const auto inst = consistent_instantiations(spec.templ, spec.stated_class);
    if (inst.size() == 1) continue;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& i : inst) list.push_back({{"indices", i.indices}, {"inverted", i.inverted}});
    multi.push_back({{"id", spec.id}, {"instantiations", list}});
  }
  out.push_back({"F.instantiations", Status::Finding,
                 std::to_string(multi.size()) + " relator ids admit more than one consistent index triple",
                 {{"ids", multi}}});
  return out;
}

inline std::vector<Check> theorem_findings() {
  std::vector<Check> out;
  for (Check c : theorem_r_findings()) {
    c.id = "F." + c.id;
    out.push_back(std::move(c));
  }
  return out;
}

inline void record_conventions(Report& report) {
  const WModule& wm = w_module();
  auto& f = report.facts();
  f["rho_convention"] = to_string(rho_convention());
  f["conjugation_side"] = to_string(wm.select_conjugation_side());
  const RationalMatrix comm = wm.lie_operator(2, 3) * wm.lie_operator(1, 2) - wm.lie_operator(1, 2) * wm.lie_operator(2, 3);
  f["operator_commutator"] = comm == wm.lie_operator(1, 3) ? "[e12,e23] = e13" : "[e12,e23] != e13";
  f["external_inputs"] = {{"gr3_dimension", 43}, {"tau2_injectivity", "assumed"}};
}

inline Report verify_all(Session& session) {
  Report r("verify");
  r.add(criterion_witt());
  r.add(criterion_relators(session));
  r.add(criterion_johnson());
  r.add(criterion_bracket(session));
  r.add(criterion_table1(session));
  r.add(criterion_theorem(session));
  r.add(criterion_decompositions());
  r.add(criterion_highest_weight(session));
  r.add(criterion_corollary(session));
  r.add(criterion_properties(session.sources()));
  r.add_all(relator_findings(session));
  r.add_all(theorem_findings());
  if (!session.cokernel_report().free())
    r.add({"F.torsion", Status::Finding, "the cokernel has torsion", {{"torsion", session.cokernel_report().torsion().size()}}});
  record_conventions(r);
  r.facts()["data"] = session.data_facts();
  return r;
}

// Writes `stem`.csv and the row/column labels to `stem`.labels.json.
inline void emit_bracket_matrix(const BracketMatrix& bm, const std::filesystem::path& csv) {
  std::ostringstream out;
  write_csv(out, bm.matrix);
  write_text_file(csv, out.str());
  std::filesystem::path labels = csv;
  labels.replace_extension(".labels.json");
  write_text_file(labels, bm.labels_json().dump(2) + "\n");
}

// tree,mark,role with role "cokernel-basis" or "eliminated" once the
// certificate check passed, "unverified" otherwise.
inline std::string table1_status_csv(Session& session) {
  const Table1Report& rep = session.table1_report();
  std::map<std::string, std::string> marks;
  for (const auto& row : session.table1()) marks[row.label] = row.mark.value_or("");
  std::string out = "tree,mark,role\n";
  for (const auto& [tree, role] : rep.roles)
    out += "\"" + tree + "\"," + marks[tree] + "," + (rep.ok() ? role : std::string("unverified")) + "\n";
  return out;
}

struct EmittedArtifacts {
  std::vector<std::filesystem::path> files;
  Report report{"verify"};
};

// Everything written here is deterministic; the report omits metadata.
inline EmittedArtifacts emit_artifacts(Session& session, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "decompositions");
  EmittedArtifacts out;
  emit_bracket_matrix(session.bracket_matrix(), dir / "bracket_matrix.csv");
  out.files.push_back(dir / "bracket_matrix.csv");
  out.files.push_back(dir / "bracket_matrix.labels.json");
  write_text_file(dir / "table1_status.csv", table1_status_csv(session));
  out.files.push_back(dir / "table1_status.csv");
  for (const auto& name : module_names()) {
    const fs::path p = dir / "decompositions" / (name + ".json");
    write_text_file(p, decompose_char(module_char(name)).to_json().dump(2) + "\n");
    out.files.push_back(p);
  }
  out.report = verify_all(session);
  write_text_file(dir / "report.json", out.report.to_json(false).dump(2) + "\n");
  write_text_file(dir / "report.txt", out.report.to_text());
  out.files.push_back(dir / "report.json");
  out.files.push_back(dir / "report.txt");
  return out;
}

}  // namespace ia3
