#pragma once

// The aprseq command-line front end. run_cli parses argv and writes to the
// given streams so that tests can drive it in-process.
//
// Exit codes: 0 success, 1 a check failed or a word was rejected,
// 2 usage or input error (reported on stderr as a JSON object).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aprseq/aprseq.hpp"

namespace aprseq::cli {

using nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json matrix_json(const SymMatrix& b) {
  json rows = json::array();
  for (std::size_t i = 1; i <= b.order(); ++i) {
    json row = json::array();
    for (std::size_t j = 1; j <= b.order(); ++j) row.push_back(b(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string field_name(const FieldSpec& f) { return f.is_rational() ? "rational" : "gf:" + std::to_string(f.modulus()); }

inline std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t n) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) throw UsageError("bad index '" + item + "' in --gamma");
    const auto v = std::stoull(item);
    if (v < 1 || v > n) throw UsageError("index " + item + " in --gamma is outside 1.." + std::to_string(n));
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw UsageError("--gamma needs at least one index");
  return out;
}

inline std::uint64_t budget_from_env() {
  const char* env = std::getenv("APRSEQ_CENSUS_BUDGET");
  if (!env || !*env) return default_census_budget;
  const std::string s(env);
  if (s.find_first_not_of("0123456789") != std::string::npos) throw UsageError("APRSEQ_CENSUS_BUDGET must be a positive integer");
  return std::stoull(s);
}

// ---------------------------------------------------------------------------
// commands

struct ComputeArgs {
  std::string file;
  std::string seq = "all";
  bool json = false;
};

inline int cmd_compute(const ComputeArgs& a, std::ostream& out) {
  const SymMatrix b = load_matrix(a.file);
  const MinorEvaluator ev(b);
  const bool want_apr = a.seq == "apr" || a.seq == "all";
  if (a.seq == "apr" && b.order() < 2) throw UsageError("the apr-sequence of a 1x1 matrix is undefined");
  json rec;
  rec["n"] = b.order();
  rec["field"] = field_name(b.field());
  if (want_apr) rec["apr"] = b.order() >= 2 ? json(apr_sequence(ev).word()) : json(nullptr);
  if (a.seq == "epr" || a.seq == "all") rec["epr"] = epr_sequence(ev).word();
  if (a.seq == "qpr" || a.seq == "all") rec["qpr"] = qpr_sequence(ev).word();
  rec["rank"] = ev.rank();
  rec["aprank"] = ap_rank(ev);
  if (a.json) {
    out << rec.dump(2) << "\n";
    return exit_ok;
  }
  for (const char* key : {"apr", "epr", "qpr"}) {
    if (!rec.contains(key)) continue;
    out << key << " " << (rec[key].is_null() ? std::string("undefined") : rec[key].get<std::string>()) << "\n";
  }
  out << "rank " << rec["rank"].get<std::size_t>() << "\n";
  out << "aprank " << rec["aprank"].get<std::size_t>() << "\n";
  return exit_ok;
}

struct ClassifyArgs {
  std::string word;
  std::string field = "char0";
  bool json = false;
};

inline int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  CharSeq seq = [&] {
    try {
      return CharSeq::parse(a.word);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  json rec;
  rec["word"] = seq.word();
  rec["field"] = a.field;
  const bool has_A = seq.contains(Letter::A);
  if (a.field == "noA" || (a.field == "any" && !has_A && seq.length() >= 2)) {
    if (has_A) throw UsageError("'" + seq.word() + "' contains A; --field noA classifies words over {S, N}");
    const SeqForm f = classify_no_A(seq);
    const bool ok = f.form != FormKind::NotNoA;
    rec["attainable"] = ok;
    rec["form"] = ok ? json(form_pattern(f.form)) : json(nullptr);
    rec["reason"] = ok ? std::string("matches ") + form_pattern(f.form) : "matches none of NN*, SNN*, SNS(NS)*N*, SSS*N*";
  } else if (a.field == "char0" || a.field == "any") {
    const Verdict v = check_char0(seq);
    const bool decided = a.field == "char0" || !v.attainable || seq.length() == 1;
    rec["attainable"] = decided ? json(v.attainable) : json(nullptr);
    rec["clause"] = v.clause;
    rec["reason"] = decided ? v.reason : v.reason + "; sufficiency is only known in characteristic 0";
  } else {
    throw UsageError("--field must be char0, any or noA");
  }
  if (a.json) {
    out << rec.dump(2) << "\n";
  } else {
    const std::string verdict = rec["attainable"].is_null() ? "undetermined" : (rec["attainable"].get<bool>() ? "attainable" : "not attainable");
    out << seq.word() << ": " << verdict << " (" << rec["reason"].get<std::string>() << ")\n";
  }
  return rec["attainable"].is_boolean() && !rec["attainable"].get<bool>() ? exit_check_failed : exit_ok;
}

struct RealizeArgs {
  std::string word;
  std::uint64_t seed = 1;
  std::uint64_t entry_bound = 100;
  std::size_t max_retries = 32;
  std::string out_file;
  bool json = false;
};

inline int cmd_realize(const RealizeArgs& a, std::ostream& out) {
  CharSeq seq = [&] {
    try {
      return CharSeq::parse(a.word);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  json rec;
  rec["word"] = seq.word();
  rec["seed"] = a.seed;
  try {
    const Realization r = realize(seq, RealizeOptions{a.seed, a.entry_bound, a.max_retries});
    const std::string recomputed = apr_sequence(r.matrix).word();
    if (!a.out_file.empty()) save_matrix(r.matrix, a.out_file);
    rec["status"] = "realized";
    rec["order"] = r.matrix.order();
    rec["path"] = r.path;
    rec["retries"] = r.retries;
    rec["apr"] = recomputed;
    rec["verified"] = recomputed == seq.word();
    rec["matrix"] = matrix_json(r.matrix);
    if (!a.out_file.empty()) rec["file"] = a.out_file;
    if (a.json) {
      out << rec.dump(2) << "\n";
    } else {
      if (a.out_file.empty()) out << format_matrix(r.matrix);
      out << "verified: apr = " << recomputed << " (n = " << r.matrix.order() << ", path " << r.path << ", retries " << r.retries << ")\n";
    }
    return exit_ok;
  } catch (const RejectedSequence& e) {
    rec["status"] = "rejected";
    rec["reason"] = e.what();
  } catch (const RetryExhausted& e) {
    rec["status"] = "failed";
    rec["reason"] = e.what();
  }
  if (a.json) {
    out << rec.dump(2) << "\n";
  } else {
    out << rec["status"].get<std::string>() << ": " << rec["reason"].get<std::string>() << "\n";
  }
  return exit_check_failed;
}

struct CensusArgs {
  std::string field = "gf:2";
  std::size_t n = 4;
  std::string out_file;
  unsigned threads = 0;
  std::uint64_t budget = 0;
  bool dedup = false;
  bool witnesses = true;
};

inline json census_json(const CensusReport& rep, const CrossCheck& cc, bool witnesses) {
  const SymmetricEnumerator en(rep.field, rep.n, rep.matrix_count);
  auto words = [&](const std::map<std::string, WordStat>& m) {
    json o = json::object();
    for (const auto& [w, s] : m) {
      json e{{"count", s.count}, {"witness_index", s.witness}};
      if (witnesses) {
        json rows = json::array();
        const SymMatrix b = en.matrix(s.witness);
        for (std::size_t i = 1; i <= b.order(); ++i) {
          json row = json::array();
          for (std::size_t j = 1; j <= b.order(); ++j) row.push_back(b(i, j).residue());
          rows.push_back(std::move(row));
        }
        e["witness"] = std::move(rows);
      }
      o[w] = std::move(e);
    }
    return o;
  };
  auto violations = [](const std::vector<CensusViolation>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back({{"check", x.check}, {"detail", x.detail}, {"witness_index", x.witness ? json(*x.witness) : json(nullptr)}});
    return a;
  };
  return json{{"field", field_name(rep.field)},
              {"n", rep.n},
              {"matrix_count", rep.matrix_count},
              {"visited", rep.visited},
              {"deduplicated", rep.deduplicated},
              {"apr", words(rep.apr)},
              {"epr", words(rep.epr)},
              {"qpr", words(rep.qpr)},
              {"violations", violations(rep.violations)},
              {"cross_check",
               {{"observed_no_A", cc.observed_no_A}, {"predicted_no_A", cc.predicted_no_A}, {"mismatches", violations(cc.mismatches)}}},
              {"ok", rep.ok() && cc.ok()}};
}

inline int cmd_census(const CensusArgs& a, std::ostream& out) {
  FieldSpec f;
  try {
    f = parse_field_spec(a.field);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (!f.is_prime_field()) throw UsageError("census needs --field gf:p");
  CensusOptions opts;
  opts.budget = a.budget ? a.budget : budget_from_env();
  opts.threads = a.threads;
  opts.sorted_diagonal_only = a.dedup;
  const CensusReport rep = apr_census(f, a.n, opts);
  const CrossCheck cc = census_cross_check(rep);
  const json rec = census_json(rep, cc, a.witnesses);
  if (a.out_file.empty()) {
    out << rec.dump(2) << "\n";
  } else {
    std::ofstream file(a.out_file);
    if (!file) throw std::runtime_error("cannot write '" + a.out_file + "'");
    file << rec.dump(2) << "\n";
    out << field_name(f) << " n=" << a.n << ": " << rep.visited << " matrices, " << rep.apr.size() << " apr words, "
        << rep.violations.size() + cc.mismatches.size() << " violations; report written to " << a.out_file << "\n";
  }
  return rec["ok"].get<bool>() ? exit_ok : exit_check_failed;
}

struct SchurArgs {
  std::string file;
  std::string gamma;
  bool json = false;
};

inline int cmd_schur(const SchurArgs& a, std::ostream& out) {
  const SymMatrix b = load_matrix(a.file);
  const IndexSet gamma(b.order(), parse_index_list(a.gamma, b.order()));
  const SchurComplement sc = schur_complement(b, gamma);
  const std::size_t rb = rank(b), rc = rank(sc.matrix);
  const bool rank_ok = rc + gamma.size() == rb;
  if (a.json) {
    json rec{{"gamma", gamma.members()}, {"labels", sc.labels}, {"matrix", matrix_json(sc.matrix)}, {"rank_B", rb}, {"rank_C", rc}, {"rank_identity", rank_ok}};
    out << rec.dump(2) << "\n";
  } else {
    out << "labels";
    for (auto l : sc.labels) out << " " << l;
    out << "\n" << sc.matrix.to_string();
    out << "rank " << rc << " = rank(B) " << rb << " - |gamma| " << gamma.size() << (rank_ok ? "" : " FAILED") << "\n";
  }
  return rank_ok ? exit_ok : exit_check_failed;
}

struct VerifyArgs {
  std::string suite = "all";
  std::size_t trials = 1000;
  std::size_t n_max = 7;
  std::uint64_t seed = 1;
  bool json = false;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  std::vector<std::string> names = a.suite == "all" ? suite_names() : std::vector<std::string>{a.suite};
  for (const auto& nm : names) {
    try {
      (void)find_suite(nm);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  if (a.n_max < 2) throw UsageError("--n-max must be at least 2");
  json results = json::array();
  bool all_ok = true;
  for (const auto& nm : names) {
    const SuiteResult r = run_suite(nm, SuiteOptions{a.trials, a.n_max, a.seed});
    all_ok = all_ok && r.passed;
    json rec{{"suite", r.name}, {"trials", r.trials}, {"hits", r.hits}, {"passed", r.passed}};
    if (!r.passed) {
      rec["failure"] = r.failure;
      rec["counterexample"] = matrix_json(*r.counterexample);
    }
    if (!a.json) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << " trials=" << r.trials << " hits=" << r.hits << "\n";
      if (!r.passed) out << "  " << r.failure << "\n" << format_matrix(*r.counterexample);
    }
    results.push_back(std::move(rec));
  }
  if (a.json) out << json{{"seed", a.seed}, {"suites", results}, {"ok", all_ok}}.dump(2) << "\n";
  return all_ok ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank characteristic sequences of symmetric matrices", "aprseq"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "apr/epr/qpr-sequences, rank and ap-rank of a matrix file");
  c->add_option("file", compute.file, "matrix file")->required();
  c->add_option("--seq", compute.seq, "apr, epr, qpr or all")->check(CLI::IsMember({"apr", "epr", "qpr", "all"}));
  c->add_flag("--json", compute.json, "JSON output");

  ClassifyArgs classify;
  auto* cl = app.add_subcommand("classify", "attainability of an apr word");
  cl->add_option("word", classify.word, "word over A, N, S")->required();
  cl->add_option("--field", classify.field, "char0, any or noA")->check(CLI::IsMember({"char0", "any", "noA"}));
  cl->add_flag("--json", classify.json, "JSON output");

  RealizeArgs realize_args;
  auto* r = app.add_subcommand("realize", "construct a rational symmetric matrix with a given apr-sequence");
  r->add_option("word", realize_args.word, "word over A, N, S")->required();
  r->add_option("--seed", realize_args.seed, "random seed");
  r->add_option("--entry-bound", realize_args.entry_bound, "sampling bound for border vectors")->check(CLI::PositiveNumber);
  r->add_option("--max-retries", realize_args.max_retries, "samples per bordering step")->check(CLI::PositiveNumber);
  r->add_option("--out", realize_args.out_file, "write the matrix to this file");
  r->add_flag("--json", realize_args.json, "JSON output");

  CensusArgs census;
  auto* ce = app.add_subcommand("census", "enumerate all symmetric matrices over GF(p)");
  ce->add_option("--field", census.field, "gf:p");
  ce->add_option("--n", census.n, "order")->check(CLI::Range(1, 8));
  ce->add_option("--out", census.out_file, "write the JSON report to this file");
  ce->add_option("--threads", census.threads, "worker threads (0 = all cores)");
  ce->add_option("--budget", census.budget, "maximum number of matrices (default from APRSEQ_CENSUS_BUDGET or 2^24)");
  ce->add_flag("--sorted-diagonal", census.dedup, "visit only matrices with non-decreasing diagonal");
  ce->add_flag("!--no-witnesses", census.witnesses, "omit witness matrices from the report");

  SchurArgs schur;
  auto* s = app.add_subcommand("schur", "Schur complement B/B[gamma]");
  s->add_option("file", schur.file, "matrix file")->required();
  s->add_option("--gamma", schur.gamma, "comma-separated indices, e.g. 1,3")->required();
  s->add_flag("--json", schur.json, "JSON output");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "run randomized property suites");
  v->add_option("--suite", verify.suite, "suite name or all");
  v->add_option("--trials", verify.trials, "matrices per suite")->check(CLI::PositiveNumber);
  v->add_option("--n-max", verify.n_max, "largest order");
  v->add_option("--seed", verify.seed, "random seed");
  v->add_flag("--json", verify.json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (*c) return cmd_compute(compute, out);
    if (*cl) return cmd_classify(classify, out);
    if (*r) return cmd_realize(realize_args, out);
    if (*ce) return cmd_census(census, out);
    if (*s) return cmd_schur(schur, out);
    if (*v) return cmd_verify(verify, out);
  } catch (const std::exception& e) {
    // parse errors, budget overruns, singular pivot blocks and bad options
    err << json{{"error", e.what()}, {"exit_code", exit_usage}}.dump() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace aprseq::cli
