// Copyright 2026 The ia3 Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ia3/verify.hpp"
#include "json.hpp"

namespace ia3::cli {

inline constexpr const char* kOutDirEnv = "IA3_OUT_DIR";

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

// Relative paths land in $IA3_OUT_DIR when it is set.
inline std::filesystem::path output_path(const std::filesystem::path& p) {
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) return std::filesystem::path(dir) / p;
  return p;
}

inline std::filesystem::path default_output_dir() {
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) return dir;
  return "ia3_artifacts";
}

struct Options {
  std::optional<std::string> relators_path, table1_path;
  std::uint64_t seed = DataSources{}.seed;
  std::size_t property_count = DataSources{}.property_count;
  std::string format = "json";

  int n = 0, k = 0;
  std::optional<std::string> emit;
  std::optional<std::string> relator_id;
  bool rank = false, snf = false;
  std::optional<std::string> module;
  std::vector<std::string> tensor;
  std::vector<std::string> ext;
  std::string vector;
  bool all = false;
  std::optional<std::string> criterion;
  std::optional<std::string> dir;

  DataSources sources() const {
    DataSources s;
    if (relators_path) s.relators = *relators_path;
    if (table1_path) s.table1 = *table1_path;
    s.seed = seed;
    s.property_count = property_count;
    return s;
  }
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline int print_report(const Report& r, const Options& o, std::ostream& out) {
  if (o.format == "text")
    out << r.to_text();
  else
    out << r.to_json().dump(2) << '\n';
  return r.exit_code();
}

inline AlphabetPtr alphabet_for(int n) {
  if (n < 1) throw UsageError("-n must be positive");
  return n == 9 ? magnus_alphabet(3) : free_basis(n);  // nine letters means the Magnus generators
}

inline int cmd_witt(const Options& o, std::ostream& out) {
  if (o.n < 1 || o.k < 1) throw UsageError("-n and -k must be positive");
  out << witt_rank(o.n, o.k) << '\n';
  return kOk;
}

inline int cmd_hall(const Options& o, std::ostream& out) {
  if (o.k < 1 || o.k > FreeLieAlgebra::kMaxWeight)
    throw UsageError("-k must lie in 1.." + std::to_string(FreeLieAlgebra::kMaxWeight));
  const AlphabetPtr alph = alphabet_for(o.n);
  const auto trees = hall_basis_strings(alph, o.k);
  if (o.emit) {
    const nlohmann::json j = {{"alphabet", alph->names()}, {"weight", o.k}, {"basis", trees}};
    const auto path = output_path(*o.emit);
    write_text_file(path, j.dump(2) + "\n");
    out << trees.size() << " trees written to " << path.string() << '\n';
  } else {
    for (const auto& t : trees) out << t << '\n';
  }
  return kOk;
}

inline int cmd_relators(const Options& o, Session& session, std::ostream& out) {
  nlohmann::json list = nlohmann::json::array();
  bool ok = true;
  for (const auto& spec : session.relators()) {
    if (o.relator_id && spec.id != *o.relator_id) continue;
    nlohmann::json j = spec.to_json();
    const bool identity = verify_relator(spec.word);
    const LieVector c = degree2_class_of(spec.word);
    j["evaluates_to_identity"] = identity;
    j["computed_class"] = c.to_json();
    j["class_matches"] = c == spec.stated_class;
    ok = ok && identity && c == spec.stated_class;
    list.push_back(std::move(j));
  }
  if (o.relator_id && list.empty()) throw UsageError("unknown relator id \"" + *o.relator_id + "\"");
  out << (o.relator_id ? list.front() : list).dump(2) << '\n';
  return ok ? kOk : kCheckFailed;
}

inline int cmd_bracket(const Options& o, Session& session, std::ostream& out) {
  if (o.rank) {
    out << session.injectivity().rank << '\n';
    return kOk;
  }
  if (o.snf) {
    const auto& ck = session.cokernel_report();
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& t : ck.torsion()) torsion.push_back(t.str());
    std::size_t units = 0;
    for (const auto& d : ck.snf.invariant_factors) units += d == 1;
    out << nlohmann::json{{"rank", ck.rank()},
                          {"cokernel_rank", ck.cokernel_rank()},
                          {"unit_invariant_factors", units},
                          {"torsion", torsion},
                          {"free", ck.free()}}
               .dump(2)
        << '\n';
    return ck.free() ? kOk : kCheckFailed;
  }
  if (o.emit) {
    const auto path = output_path(*o.emit);
    emit_bracket_matrix(session.bracket_matrix(), path);
    out << "bracket matrix written to " << path.string() << '\n';
    return kOk;
  }
  Report r("bracket");
  r.add(criterion_bracket(session));
  return print_report(r, o, out);
}

inline int cmd_table1(const Options& o, Session& session, std::ostream& out) {
  Report r("table1");
  r.add(criterion_table1(session));
  r.facts()["data"] = session.data_facts();
  return print_report(r, o, out);
}

inline int cmd_decompose(const Options& o, std::ostream& out) {
  const int given = (o.module ? 1 : 0) + (o.tensor.empty() ? 0 : 1) + (o.ext.empty() ? 0 : 1);
  if (given != 1) throw UsageError("decompose needs exactly one of --module, --tensor, --ext");
  Decomposition d;
  nlohmann::json input;
  try {
    if (o.module) {
      d = decompose_char(module_char(*o.module));
      input = {{"module", *o.module}};
    } else if (!o.tensor.empty()) {
      const Weight a = parse_weight(o.tensor.at(0)), b = parse_weight(o.tensor.at(1));
      d = tensor_decompose(a, b);
      input = {{"tensor", {a.parts, b.parts}}};
    } else {
      const Weight a = parse_weight(o.ext.at(0));
      const int k = std::stoi(o.ext.at(1));
      d = ext_decompose(a, k);
      input = {{"ext", {{"weight", a.parts}, {"k", k}}}};
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out << nlohmann::json{{"input", input}, {"decomposition", d.to_json()}, {"dim", d.dimension().str()}}.dump(2) << '\n';
  return kOk;
}

inline int cmd_hwcheck(const Options& o, Session& session, std::ostream& out) {
  Report r("hwcheck");
  r.add(criterion_highest_weight(session));
  record_conventions(r);
  return print_report(r, o, out);
}

inline int cmd_johnson(const Options& o, Session& session, std::ostream& out) {
  for (const auto& v : highest_weight_vectors()) {
    if (v.name != o.vector) continue;
    const JohnsonImage j = johnson_sum(v.lift);
    const bool member = membership_in_R_R3(v.vector, session.relators()).has_value();
    out << nlohmann::json{{"vector", v.name},
                          {"class", v.vector.to_json()},
                          {"tau2", j.to_json()},
                          {"tau2_vanishes", j.is_zero()},
                          {"in_relator_span", member}}
               .dump(2)
        << '\n';
    return kOk;
  }
  throw UsageError("--vector must be one of v1, v2, v3, v4");
}

inline int cmd_theorem(const Options& o, Session& session, std::ostream& out) {
  Report r("theorem-4-6");
  r.add(criterion_theorem(session));
  r.add_all(theorem_findings());
  return print_report(r, o, out);
}

inline int cmd_verify(const Options& o, Session& session, std::ostream& out) {
  if (o.all == o.criterion.has_value()) throw UsageError("verify needs --all or --criterion ID");
  if (o.all) return print_report(verify_all(session), o, out);
  Report full = verify_all(session);
  Report r("verify");
  for (const auto& c : full.checks())
    if (c.id == *o.criterion) r.add(c);
  if (r.checks().empty()) throw UsageError("unknown criterion \"" + *o.criterion + "\"");
  return print_report(r, o, out);
}

inline int cmd_emit(const Options& o, Session& session, std::ostream& out) {
  const std::filesystem::path dir = o.dir ? output_path(*o.dir) : default_output_dir();
  const EmittedArtifacts a = emit_artifacts(session, dir);
  for (const auto& f : a.files) out << f.string() << '\n';
  return a.report.exit_code();
}

// Parses and runs one command line (without the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of the IA_3 relator, bracket map and GL(3) computations", "ia3"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  Options o;
  app.add_option("--relators", o.relators_path, "relators.json to use instead of the embedded copy");
  app.add_option("--table1", o.table1_path, "table1.csv to use instead of the embedded copy");
  app.add_option("--seed", o.seed, "seed for the property suites");
  app.add_option("--property-count", o.property_count, "instances per property")->check(CLI::Range(1000, 1000000));
  auto with_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* witt = app.add_subcommand("witt", "rank of the degree-k part of the free Lie algebra on n generators");
  witt->add_option("-n", o.n)->required();
  witt->add_option("-k", o.k)->required();

  auto* hall = app.add_subcommand("hall", "Hall basis of weight k (n = 9 uses the Magnus symbols)");
  hall->add_option("-n", o.n)->required();
  hall->add_option("-k", o.k)->required();
  hall->add_option("--emit", o.emit, "write the basis as JSON");

  auto* relators = app.add_subcommand("relators", "relator words with their degree-2 classes");
  relators->add_option("--id", o.relator_id);

  auto* bracket = app.add_subcommand("bracket", "the 240 x 162 bracket matrix");
  auto* b_rank = bracket->add_flag("--rank", o.rank, "print the rank");
  auto* b_snf = bracket->add_flag("--snf", o.snf, "Smith normal form summary");
  auto* b_emit = bracket->add_option("--emit", o.emit, "write CSV plus a .labels.json sidecar");
  b_rank->excludes(b_snf)->excludes(b_emit);
  b_snf->excludes(b_emit);
  with_format(bracket);

  auto* table1 = app.add_subcommand("table1", "check the transcribed cokernel table against the bracket matrix");
  table1->add_option("--data", o.table1_path, "table1.csv (defaults to the embedded copy)");
  with_format(table1);

  auto* decompose = app.add_subcommand("decompose", "irreducible GL(3) decomposition");
  decompose->add_option("--module", o.module)->check(CLI::IsMember(module_names()));
  decompose->add_option("--tensor", o.tensor, "two weights, e.g. --tensor 3,2 2,2")->expected(2);
  decompose->add_option("--ext", o.ext, "weight and k, e.g. --ext 1,1,-1 3")->expected(2);

  auto* hwcheck = app.add_subcommand("hwcheck", "highest weight vectors in W and its exterior square");
  with_format(hwcheck);

  auto* johnson = app.add_subcommand("johnson", "second Johnson image of a weight-2 vector lift");
  johnson->add_option("--vector", o.vector)->required()->check(CLI::IsMember({"v1", "v2", "v3", "v4"}));

  auto* theorem = app.add_subcommand("theorem-4-6", "the [3,2,-2] component in the cokernel");
  with_format(theorem);

  auto* verify = app.add_subcommand("verify", "run every suite");
  verify->add_flag("--all", o.all);
  verify->add_option("--criterion", o.criterion, "run the suites and keep one record, e.g. C4");
  with_format(verify);

  auto* emit = app.add_subcommand("emit", "write all artifacts to a directory (default $IA3_OUT_DIR)");
  emit->alias("emit_artifacts");
  emit->add_option("--dir", o.dir);

  // CLI11 wants argv order reversed when given a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Session session(o.sources());
    if (*witt) return cmd_witt(o, out);
    if (*hall) return cmd_hall(o, out);
    if (*relators) return cmd_relators(o, session, out);
    if (*bracket) return cmd_bracket(o, session, out);
    if (*table1) return cmd_table1(o, session, out);
    if (*decompose) return cmd_decompose(o, out);
    if (*hwcheck) return cmd_hwcheck(o, session, out);
    if (*johnson) return cmd_johnson(o, session, out);
    if (*theorem) return cmd_theorem(o, session, out);
    if (*verify) return cmd_verify(o, session, out);
    if (*emit) return cmd_emit(o, session, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace ia3::cli
