// d4syl: command-line front end (table, classes, verify, info).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "d4syl/characters.hpp"
#include "d4syl/errors.hpp"
#include "d4syl/parallel.hpp"
#include "d4syl/verify.hpp"

using namespace d4syl;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TowerOptions {
  std::uint64_t q = 0;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::string f;
  std::string g;
};

void add_tower_options(CLI::App* cmd, TowerOptions& o) {
  cmd->add_option("-q", o.q, "Order of the base field F_q (odd prime power)");
  cmd->add_option("-p", o.p, "Characteristic");
  cmd->add_option("-k", o.k, "Degree of F_q over F_p");
  cmd->add_option("--f", o.f, "Defining polynomial of F_q over F_p: coefficients, constant term first");
  cmd->add_option("--g", o.g, "Cubic over F_q as F_q codes, constant term first");
}

std::vector<std::uint32_t> parse_list(const std::string& s, const char* what) {
  std::vector<std::uint32_t> out;
  if (s.empty()) return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw UsageError(std::string("bad coefficient '") + item + "' in " + what);
    }
  }
  return out;
}

FieldTower make_tower(const TowerOptions& o) {
  std::uint32_t p = o.p, k = o.k;
  if (o.q != 0) {
    const auto pk = split_prime_power(o.q);
    if (!pk) throw UsageError("q = " + std::to_string(o.q) + " is not a prime power");
    if ((p != 0 && p != pk->first) || (k != 0 && k != pk->second))
      throw UsageError("-q disagrees with -p/-k");
    p = pk->first;
    k = pk->second;
  } else if (p == 0) {
    throw UsageError("give -q, or -p (and optionally -k)");
  }
  if (k == 0) k = 1;
  return build_tower(p, k, parse_list(o.f, "--f"), parse_list(o.g, "--g"));
}

json digits(const FieldTower& ctx, Fq3 a) { return ctx.fp_coords(a); }

nlohmann::ordered_json metadata(const FieldTower& ctx) {
  return {{"p", ctx.p()},
          {"k", ctx.k()},
          {"q", ctx.q()},
          {"f", ctx.f()},
          {"g", ctx.g()},
          {"eta", digits(ctx, ctx.eta())},
          {"theta", "theta(x) = zeta_p^Tr(x), zeta_p = exp(2 pi i / p); values are coefficient lists over 1, zeta_p, ..., zeta_p^(p-2)"}};
}

json class_json(const FieldTower& ctx, const ConjClass& c) {
  return {{"family", family_name(c.family)}, {"rep", to_string(ctx, c.rep)}, {"size", c.size}, {"index", c.index}};
}

json char_json(const FieldTower& ctx, const CharLabel& l) {
  return {{"family", family_name(l.family)}, {"label", to_string(ctx, l)}, {"degree", degree(ctx, l)}};
}

// Rows are produced in blocks so the full grid never has to sit in memory.
template <class Emit>
void for_each_row(const CharacterTable& table, Emit emit) {
  const std::size_t block = 64;
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t start = 0; start < table.rows(); start += block) {
    const std::size_t n = std::min(block, table.rows() - start);
    rows.assign(n, {});
    parallel_for(n, [&](std::size_t i) { rows[i] = table.row_coeffs(start + i); });
    for (std::size_t i = 0; i < n; ++i) emit(start + i, rows[i]);
  }
}

void write_json(const CharacterTable& table, std::ostream& out) {
  const FieldTower& ctx = table.ctx();
  const std::size_t w = ctx.p() - 1;
  json classes = json::array(), characters = json::array();
  for (const auto& c : table.classes()) classes.push_back(class_json(ctx, c));
  for (const auto& l : table.labels()) characters.push_back(char_json(ctx, l));
  out << "{\"schema\":1,\"metadata\":" << metadata(ctx).dump() << ",\"classes\":" << classes.dump()
      << ",\"characters\":" << characters.dump() << ",\"values\":[";
  for_each_row(table, [&](std::size_t r, const std::vector<std::int64_t>& row) {
    out << (r ? ",\n[" : "\n[");
    for (std::size_t c = 0; c < table.cols(); ++c) {
      out << (c ? ",[" : "[");
      for (std::size_t s = 0; s < w; ++s) out << (s ? "," : "") << row[c * w + s];
      out << ']';
    }
    out << ']';
  });
  out << "]}\n";
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void write_csv(const CharacterTable& table, std::ostream& out) {
  const FieldTower& ctx = table.ctx();
  const std::size_t w = ctx.p() - 1;
  const auto meta = metadata(ctx);
  out << "# schema=1\n";
  for (const auto& [key, value] : meta.items()) out << "# " << key << '=' << value.dump() << '\n';
  out << "character,degree";
  for (const auto& c : table.classes()) out << ',' << csv_quote(to_string(ctx, c.rep));
  out << "\nclass size,";
  for (const auto& c : table.classes()) out << ',' << c.size;
  out << '\n';
  for_each_row(table, [&](std::size_t r, const std::vector<std::int64_t>& row) {
    out << csv_quote(to_string(ctx, table.labels()[r])) << ',' << degree(ctx, table.labels()[r]);
    for (std::size_t c = 0; c < table.cols(); ++c) {
      out << ",\"(";
      for (std::size_t s = 0; s < w; ++s) out << (s ? "," : "") << row[c * w + s];
      out << ")\"";
    }
    out << '\n';
  });
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int run_table(const TowerOptions& o, const std::string& path) {
  const bool as_json = ends_with(path, ".json");
  if (!as_json && !ends_with(path, ".csv")) throw UsageError("output file must end in .json or .csv");
  const FieldTower ctx = make_tower(o);
  const CharacterTable table = build_table(ctx, false);
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open " + path);
  if (as_json)
    write_json(table, out);
  else
    write_csv(table, out);
  out.close();
  if (!out) {
    std::cerr << "write to " << path << " failed\n";
    return kExitFail;
  }
  std::cerr << "wrote " << table.rows() << " x " << table.cols() << " table to " << path << '\n';
  return kExitPass;
}

void print_report(const VerificationReport& r) {
  std::printf("%s  %s  [%s]  %.2fs\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(), r.seconds);
  if (!r.passed) std::printf("      counterexample: %s\n", r.counterexample.c_str());
}

int run_classes(const TowerOptions& o, bool check_census) {
  const FieldTower ctx = make_tower(o);
  json out = json::array();
  for (const auto& c : list_classes(ctx)) out.push_back(class_json(ctx, c));
  std::cout << out.dump(1) << '\n';
  if (!check_census) return kExitPass;
  const VerificationReport census = verify_class_census(ctx);
  std::fflush(stdout);
  std::fprintf(stderr, "%s  %s  [%s]\n", census.passed ? "PASS" : "FAIL", census.name.c_str(), census.detail.c_str());
  if (!census.passed) std::fprintf(stderr, "      counterexample: %s\n", census.counterexample.c_str());
  return census.passed ? kExitPass : kExitFail;
}

int run_verify(const TowerOptions& o, bool full, bool oracles, std::uint64_t samples, std::uint64_t seed) {
  const FieldTower ctx = make_tower(o);
  bool ok = true;
  auto record = [&](const VerificationReport& r) {
    print_report(r);
    ok = ok && r.passed;
  };
  record(verify_counts(ctx));
  record(verify_degrees(ctx));

  // Small tables are always checked in full.
  const bool exhaustive = full || list_classes(ctx).size() <= 1000;
  CharacterTable table = build_table(ctx, exhaustive);
  OrthogonalityOptions opt;
  opt.full = exhaustive;
  opt.sample_pairs = samples;
  opt.seed = seed;
  record(verify_row_orthogonality(table, opt));
  record(verify_column_orthogonality(table, opt));

  if (oracles) {
    try {
      for (const auto& r : verify_against_oracles(table)) record(r);
    } catch (const TooLarge& e) {
      std::printf("SKIP  oracles  [%s]\n", e.what());
    }
  }
  return ok ? kExitPass : kExitFail;
}

int run_info(const TowerOptions& o) {
  const FieldTower ctx = make_tower(o);
  const auto meta = metadata(ctx);
  for (const auto& [key, value] : meta.items()) std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  std::cout << "classes: " << list_classes(ctx).size() << '\n';
  std::map<std::uint64_t, std::uint64_t> by_degree;
  const auto labels = list_irreducibles(ctx);
  for (const auto& l : labels) by_degree[degree(ctx, l)] += 1;
  std::cout << "characters: " << labels.size() << '\n';
  for (const auto& [d, n] : by_degree) std::cout << "  degree " << d << ": " << n << '\n';
  std::cout << "workers: " << worker_count() << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character table of the Sylow p-subgroup of 3D4(q^3)"};
  app.require_subcommand(1);

  TowerOptions table_opts, classes_opts, verify_opts, info_opts;
  std::string output;
  bool check_census = false, full = false, oracles = false;
  std::uint64_t samples = 10000, seed = 1;

  auto* table = app.add_subcommand("table", "Export the character table as JSON or CSV");
  add_tower_options(table, table_opts);
  table->add_option("-o,--output", output, "out.json or out.csv")->required();

  auto* classes = app.add_subcommand("classes", "List the conjugacy classes as JSON");
  add_tower_options(classes, classes_opts);
  classes->add_flag("--check-census", check_census, "Compare against the brute-force orbit partition");

  auto* verify = app.add_subcommand("verify", "Run the verification suites");
  add_tower_options(verify, verify_opts);
  verify->add_flag("--full", full, "Exhaustive orthogonality");
  verify->add_flag("--oracles", oracles, "Census, induction and conjugation oracles");
  verify->add_option("--samples", samples, "Sampled orthogonality: minimum number of pairs");
  verify->add_option("--seed", seed, "Sampled orthogonality: seed");

  auto* info = app.add_subcommand("info", "Print the field data and counts");
  add_tower_options(info, info_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*table) return run_table(table_opts, output);
    if (*classes) return run_classes(classes_opts, check_census);
    if (*verify) return run_verify(verify_opts, full, oracles, samples, seed);
    return run_info(info_opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
