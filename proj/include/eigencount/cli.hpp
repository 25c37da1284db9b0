#pragma once

/**
 * @file cli.hpp
 * @brief The `eigencount` command line: count, table, verify, bound.
 *
 * Exit codes are a stable contract:
 *   0 success, 2 usage, 3 table mismatch, 4 verification mismatch,
 *   5 scan budget exceeded, 6 bound violated.
 *
 * Records go to `out`, diagnostics to `err`.
 */

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eigencount/countcore.hpp"
#include "eigencount/oracle.hpp"
#include "eigencount/output.hpp"
#include "eigencount/qpoly.hpp"
#include "eigencount/reference_table.hpp"

namespace eigencount::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kTableMismatch = 3,
  kVerifyMismatch = 4,
  kBudget = 5,
  kBoundViolated = 6,
};

class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

inline std::vector<unsigned> parse_residue_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in list '" + text + "'");
    std::size_t used = 0;
    const unsigned long v = std::stoul(item, &used);
    if (used != item.size()) throw UsageError("not an integer: '" + item + "'");
    out.push_back(static_cast<unsigned>(v));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

/// "2^4,3^1" or "2^4" or "6" style factor lists; a bare prime means exponent 1.
inline RingSpec parse_factors(const std::string& text) {
  std::vector<std::pair<unsigned, unsigned>> pp;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto caret = item.find('^');
    try {
      const unsigned p = static_cast<unsigned>(std::stoul(item.substr(0, caret)));
      const unsigned r = caret == std::string::npos ? 1u : static_cast<unsigned>(std::stoul(item.substr(caret + 1)));
      pp.emplace_back(p, r);
    } catch (const std::logic_error&) {
      throw UsageError("bad factor '" + item + "'; expected p^r");
    }
  }
  try {
    return RingSpec::make(std::move(pp));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline std::string join_residues(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// count

struct CountArgs {
  std::string mode;
  unsigned n = 0;
  std::optional<unsigned> k;
  std::optional<std::uint64_t> q;
  std::optional<unsigned> p;
  std::optional<std::string> alphas;
};

inline int cmd_count(const CountArgs& a, RecordWriter& writer, std::ostream& err) {
  if (a.mode != "m" && a.mode != "e") throw UsageError("--mode must be m or e");
  if (a.n < 1) throw UsageError("--n must be >= 1");

  std::optional<SpectrumSpec> spectrum;
  if (a.alphas) {
    if (!a.p) throw UsageError("--alphas requires --p");
    try {
      spectrum = SpectrumSpec::concrete(*a.p, parse_residue_list(*a.alphas));
    } catch (const UsageError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (a.k && *a.k != spectrum->k)
      throw UsageError("--k " + std::to_string(*a.k) + " disagrees with " + std::to_string(spectrum->k) + " alphas");
  } else {
    if (!a.k) throw UsageError("--k is required unless --alphas is given");
    if (*a.k < 1) throw UsageError("--k must be >= 1");
    if (a.p && !is_prime(*a.p)) throw UsageError("--p " + std::to_string(*a.p) + " is not prime");
  }
  if (a.q && a.p) throw UsageError("give either --q or --p, not both");

  const unsigned k = spectrum ? spectrum->k : *a.k;
  const IntPoly poly = a.mode == "m" ? count_m_poly(a.n, k) : count_e_poly(a.n, k);

  OutputRecord rec;
  rec.command = "count";
  rec.parameters = {{"mode", a.mode}, {"n", std::to_string(a.n)}, {"k", std::to_string(k)}};
  rec.polynomial = to_string(poly);

  std::optional<BigInt> at;
  if (a.q) {
    rec.parameters.emplace_back("q", std::to_string(*a.q));
    at = BigInt{*a.q};
  } else if (a.p) {
    rec.parameters.emplace_back("p", std::to_string(*a.p));
    at = BigInt{*a.p};
  }
  if (spectrum) rec.parameters.emplace_back("alphas", join_residues(spectrum->alphas));
  if (at) {
    if (a.mode == "e" && *at < k)
      err << "warning: a field with " << *at << " elements cannot hold " << k
          << " distinct eigenvalues; the evaluation is formal only\n";
    rec.value = poly_eval(poly, *at).str();
  }
  writer.write(rec);
  return kOk;
}

// ---------------------------------------------------------------------------
// table

struct TableOutcome {
  std::vector<OutputRecord> records;
  bool mismatch = false;
};

/// Builds the n = 3..n_max table and compares every row that has a
/// reference entry. Mismatching rows with n <= 4 are re-evaluated by the
/// oracle at the smallest prime field that can hold k eigenvalues.
inline TableOutcome table_records(unsigned n_max, std::span<const ReferenceRow> reference, const ScanOptions& opts) {
  TableOutcome outcome;
  for (const auto& row : eigenvalue_table(n_max)) {
    OutputRecord rec;
    rec.command = "table";
    rec.parameters = {{"n", std::to_string(row.n)}, {"k", std::to_string(row.k)}};
    rec.polynomial = to_string(row.poly);

    const ReferenceRow* ref = nullptr;
    for (const auto& r : reference)
      if (r.n == row.n && r.k == row.k) ref = &r;
    if (!ref) {
      rec.verdict = "no-reference";
    } else {
      const IntPoly expected = parse_poly(ref->text);
      if (expected == row.poly) {
        rec.verdict = "match";
      } else {
        outcome.mismatch = true;
        rec.verdict = "MISMATCH";
        rec.details.emplace_back("reference", to_string(expected));
        if (row.n <= 4) {
          unsigned p = std::max(2u, row.k);
          while (!is_prime(p)) ++p;
          std::vector<unsigned> alphas(row.k);
          for (unsigned i = 0; i < row.k; ++i) alphas[i] = i;
          try {
            const auto report = oracle_count_e(row.n, PrimeField(p), alphas, opts);
            const BigInt formula_value = poly_eval(row.poly, p);
            const BigInt reference_value = poly_eval(expected, p);
            rec.provenance = "both";
            rec.details.emplace_back("oracle_q", std::to_string(p));
            rec.details.emplace_back("oracle", report.count.str());
            rec.details.emplace_back("formula_at_q", formula_value.str());
            rec.details.emplace_back("reference_at_q", reference_value.str());
            rec.details.emplace_back("adjudicated", report.count == formula_value     ? "formula"
                                                    : report.count == reference_value ? "reference"
                                                                                      : "neither");
          } catch (const BudgetExceeded& e) {
            rec.details.emplace_back("oracle", std::string("unavailable: ") + e.what());
          }
        }
      }
    }
    outcome.records.push_back(std::move(rec));
  }
  return outcome;
}

inline int cmd_table(unsigned n_max, const ScanOptions& opts, RecordWriter& writer, std::ostream& err) {
  if (n_max < 3 || n_max > 8) throw UsageError("--n-max must be in 3..8");
  const auto outcome = table_records(n_max, kReferenceTable, opts);
  for (const auto& rec : outcome.records) {
    writer.write(rec);
    if (rec.verdict == "MISMATCH")
      err << "- reference " << rec.details.front().second << "\n+ computed  " << *rec.polynomial << '\n';
  }
  return outcome.mismatch ? kTableMismatch : kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  unsigned n = 0;
  unsigned p = 0;
  bool all_subsets = false;
  std::optional<std::string> spectrum;
  std::optional<unsigned> potent;
  bool timing = false;
};

/// Nonempty subsets of {0..p-1} with at most max_size elements, by size then
/// lexicographically.
inline std::vector<std::vector<unsigned>> spectrum_subsets(unsigned p, unsigned max_size) {
  std::vector<std::vector<unsigned>> out;
  for (unsigned size = 1; size <= std::min(max_size, p); ++size) {
    std::vector<unsigned> cur(size);
    for (unsigned i = 0; i < size; ++i) cur[i] = i;
    while (true) {
      out.push_back(cur);
      int i = static_cast<int>(size) - 1;
      while (i >= 0 && cur[i] == p - size + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++cur[i];
      for (unsigned j = static_cast<unsigned>(i) + 1; j < size; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  return out;
}

inline OutputRecord comparison_record(const VerifyArgs& a, const OracleCountReport& report, const BigInt& formula) {
  OutputRecord rec;
  rec.command = "verify";
  rec.parameters = {{"n", std::to_string(a.n)}, {"p", std::to_string(a.p)}, {"spec", report.spec}};
  rec.value = report.count.str();
  rec.verdict = report.count == formula ? "pass" : "FAIL";
  rec.provenance = "both";
  rec.details = {{"formula", formula.str()}, {"oracle", report.count.str()},
                 {"scanned", std::to_string(report.matrices_scanned)}};
  if (a.timing) rec.details.emplace_back("millis", std::to_string(report.elapsed.count()));
  return rec;
}

inline int cmd_verify(const VerifyArgs& a, const ScanOptions& opts, RecordWriter& writer, std::ostream& err) {
  const int scopes = int(a.all_subsets) + int(a.spectrum.has_value()) + int(a.potent.has_value());
  if (scopes != 1) throw UsageError("choose exactly one of --all-subsets, --spectrum, --potent");
  if (a.n < 1) throw UsageError("--n must be >= 1");
  if (!is_prime(a.p) || a.p > PrimeField::kMaxPrime) throw UsageError("--p must be a prime <= 257");
  const PrimeField field(a.p);

  bool failed = false;
  auto emit = [&](const OutputRecord& rec) {
    if (rec.verdict == "FAIL") {
      failed = true;
      err << "mismatch for " << rec.parameters.back().second << ": formula " << rec.details[0].second << " vs oracle "
          << rec.details[1].second << '\n';
    }
    writer.write(rec);
  };

  if (a.potent) {
    const unsigned k = *a.potent;
    if (k < 1) throw UsageError("--potent must be >= 1");
    const auto report = oracle_count_potent(a.n, field, k, opts);
    if ((a.p - 1) % k == 0) {
      emit(comparison_record(a, report, potent_count(a.n, a.p, k)));
    } else {
      OutputRecord rec;
      rec.command = "verify";
      rec.parameters = {{"n", std::to_string(a.n)}, {"p", std::to_string(a.p)}, {"spec", report.spec}};
      rec.value = report.count.str();
      rec.verdict = "oracle-only";
      rec.provenance = "oracle";
      rec.details = {{"note", "k does not divide p-1; formula not applicable"},
                     {"scanned", std::to_string(report.matrices_scanned)}};
      writer.write(rec);
    }
    return failed ? kVerifyMismatch : kOk;
  }

  std::vector<std::vector<unsigned>> subsets;
  if (a.all_subsets) {
    subsets = spectrum_subsets(a.p, a.n + 1);
  } else {
    auto s = parse_residue_list(*a.spectrum);
    try {
      SpectrumSpec::concrete(a.p, s);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    subsets.push_back(std::move(s));
  }
  for (const auto& s : subsets) {
    const auto k = static_cast<unsigned>(s.size());
    emit(comparison_record(a, oracle_count_m(a.n, field, s, opts), poly_eval(count_m_poly(a.n, k), a.p)));
    emit(comparison_record(a, oracle_count_e(a.n, field, s, opts), poly_eval(count_e_poly(a.n, k), a.p)));
  }
  return failed ? kVerifyMismatch : kOk;
}

// ---------------------------------------------------------------------------
// bound

struct BoundArgs {
  std::string kind;
  std::optional<unsigned> n;
  std::optional<unsigned> p;
  unsigned k = 0;
  std::optional<std::string> count;
  bool computed = false;
  std::optional<std::string> factors;
  std::optional<std::string> mode;
};

/// (k+1)-potent count of M_n(F_p): the formula when k | p-1, else the oracle.
inline std::pair<BigInt, std::string> computed_potent_count(unsigned n, unsigned p, unsigned k, const ScanOptions& opts) {
  if ((p - 1) % k == 0) return {potent_count(n, p, k), "formula"};
  return {oracle_count_potent(n, PrimeField(p), k, opts).count, "oracle"};
}

inline int cmd_bound(const BoundArgs& a, const ScanOptions& opts, RecordWriter& writer) {
  if (a.k < 1) throw UsageError("--k must be >= 1");
  if (a.count.has_value() == a.computed) throw UsageError("give exactly one of --count or --computed");
  if ((a.n || a.p) && !(a.n && a.p)) throw UsageError("--n and --p go together");
  if (a.p && !is_prime(*a.p)) throw UsageError("--p " + std::to_string(*a.p) + " is not prime");
  if (a.n && *a.n < 1) throw UsageError("--n must be >= 1");

  OutputRecord rec;
  rec.command = "bound";
  rec.parameters = {{"kind", a.kind}};

  BigInt count;
  if (a.count) {
    try {
      count = BigInt{*a.count};
    } catch (const std::exception&) {
      throw UsageError("--count must be a nonnegative integer");
    }
    if (count < 0) throw UsageError("--count must be a nonnegative integer");
    rec.provenance = "formula";
  } else {
    if (!a.n) throw UsageError("--computed needs --n and --p (R = M_n(F_p))");
    auto [c, source] = computed_potent_count(*a.n, *a.p, a.k, opts);
    count = c;
    rec.provenance = source;
  }

  BoundVerdict verdict;
  if (a.kind == "matrix") {
    if (!a.n) throw UsageError("--kind matrix needs --n and --p");
    if (a.factors || a.mode) throw UsageError("--factors/--mode apply to --kind ring only");
    rec.parameters.insert(rec.parameters.end(),
                          {{"n", std::to_string(*a.n)}, {"p", std::to_string(*a.p)}, {"k", std::to_string(a.k)}});
    verdict = bound_matrix_ring(*a.n, *a.p, a.k, count);
    const auto flags = intermediate_estimates(*a.n, a.k);
    rec.details.emplace_back("estimate_composition_sum", flags.composition_sum ? "ok" : "fails");
    rec.details.emplace_back("estimate_power", flags.power ? "ok" : "fails");
  } else if (a.kind == "ring") {
    RingSpec ring;
    if (a.factors) {
      if (a.n) throw UsageError("give either --factors or --n/--p for --kind ring");
      ring = parse_factors(*a.factors);
    } else if (a.n) {
      ring = RingSpec::make({{*a.p, *a.n * *a.n}});
    } else {
      throw UsageError("--kind ring needs --factors or --n/--p");
    }
    RingBoundMode mode = ring.prime_count() == 1 ? RingBoundMode::theorem2 : RingBoundMode::theorem3;
    if (a.mode) {
      if (*a.mode == "theorem2") mode = RingBoundMode::theorem2;
      else if (*a.mode == "theorem3") mode = RingBoundMode::theorem3;
      else if (*a.mode == "corollary") mode = RingBoundMode::corollary;
      else throw UsageError("--mode must be theorem2, theorem3 or corollary");
    }
    std::string factors;
    for (auto [p, r] : ring.prime_powers) {
      if (!factors.empty()) factors += ',';
      factors += std::to_string(p) + '^' + std::to_string(r);
    }
    rec.parameters.insert(rec.parameters.end(),
                          {{"factors", factors}, {"k", std::to_string(a.k)}, {"mode", to_string(mode)}});
    try {
      verdict = bound_finite_ring(ring, a.k, count, mode);
    } catch (const ModeMismatch& e) {
      throw UsageError(e.what());
    }
  } else {
    throw UsageError("--kind must be matrix or ring");
  }

  rec.value = count.str();
  rec.verdict = verdict.holds ? "holds" : "violated";
  rec.details.insert(rec.details.begin(), {{"lhs", verdict.lhs_certificate.str()},
                                           {"rhs", verdict.rhs_certificate.str()},
                                           {"tight", verdict.tight() ? "yes" : "no"}});
  writer.write(rec);
  return verdict.holds ? kOk : kBoundViolated;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counts of diagonalizable matrices with prescribed eigenvalues over F_q", "eigencount"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  unsigned jobs = 1;
  bool force = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--jobs", jobs, "Worker threads for oracle scans")->check(CLI::Range(1u, 256u));
  app.add_flag("--force", force, "Ignore the scan budget");

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "Symbolic M/E count, optionally evaluated");
  count->add_option("--mode", count_args.mode, "m (spectrum within) or e (spectrum exactly)")->required();
  count->add_option("--n", count_args.n, "Matrix dimension")->required();
  count->add_option("--k", count_args.k, "Number of distinct eigenvalues");
  count->add_option("--q", count_args.q, "Evaluate at this field size");
  count->add_option("--p", count_args.p, "Prime field for --alphas");
  count->add_option("--alphas", count_args.alphas, "Comma-separated distinct residues mod p");

  unsigned n_max = 6;
  auto* table = app.add_subcommand("table", "E-count table for n = 3..n-max, k = 2..n");
  table->add_option("--n-max", n_max, "Largest dimension (3..8)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Compare formulas against exhaustive enumeration");
  verify->add_option("--n", verify_args.n, "Matrix dimension")->required();
  verify->add_option("--p", verify_args.p, "Prime field size")->required();
  verify->add_flag("--all-subsets", verify_args.all_subsets, "Every spectrum with at most n+1 elements");
  verify->add_option("--spectrum", verify_args.spectrum, "One comma-separated spectrum");
  verify->add_option("--potent", verify_args.potent, "Count A^{k+1} = A for this k");
  verify->add_flag("--timing", verify_args.timing, "Include scan times (output no longer reproducible)");

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Certify a (k+1)-potent upper bound in exact arithmetic");
  bound->add_option("--kind", bound_args.kind, "matrix or ring")->required();
  bound->add_option("--n", bound_args.n, "Dimension of M_n(F_p)");
  bound->add_option("--p", bound_args.p, "Prime of M_n(F_p)");
  bound->add_option("--k", bound_args.k, "Potency parameter, x^{k+1} = x")->required();
  bound->add_option("--count", bound_args.count, "Explicit potent count");
  bound->add_flag("--computed", bound_args.computed, "Compute the count for M_n(F_p)");
  bound->add_option("--factors", bound_args.factors, "Ring order as p^r,p^r,...");
  bound->add_option("--mode", bound_args.mode, "theorem2, theorem3 or corollary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  ScanOptions opts;
  opts.force = force;
  opts.jobs = jobs;
  RecordWriter writer(out, parse_format(format));

  try {
    if (count->parsed()) return cmd_count(count_args, writer, err);
    if (table->parsed()) return cmd_table(n_max, opts, writer, err);
    if (verify->parsed()) return cmd_verify(verify_args, opts, writer, err);
    if (bound->parsed()) return cmd_bound(bound_args, opts, writer);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (required " << e.required() << ", budget " << e.budget()
        << "; pass --force or set EIGENCOUNT_BUDGET)\n";
    return kBudget;
  }
  return kUsage;
}

/// Same as run(argc, argv, ...) with argv[0] supplied.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"eigencount"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace eigencount::cli
