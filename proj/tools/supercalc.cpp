// supercalc: command-line front end for the super Faa di Bruno library.
//
// Exit status: 0 success, 1 verification found an inequality, 2 bad input.

#include "supercalc/supercalc.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace sc = supercalc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnequal = 1;
constexpr int kExitUsage = 2;

enum class Format { text, latex, json };

const std::map<std::string, Format> kFormats{{"text", Format::text}, {"latex", Format::latex}, {"json", Format::json}};

sc::Parity parity_flag(const std::string& s) { return sc::parse_parity(s); }

void emit(const sc::Expression& e, Format format, const std::string& dims) {
  switch (format) {
    case Format::text: std::cout << sc::to_text(e) << "\n"; break;
    case Format::latex: std::cout << sc::to_latex(e) << "\n"; break;
    case Format::json: std::cout << sc::dump(sc::expression_document(e, dims)); break;
  }
}

void emit(const sc::SuperPolynomial& p, Format format, sc::Space space = sc::Space::source) {
  switch (format) {
    case Format::text: std::cout << sc::to_text(p) << "\n"; break;
    case Format::latex: std::cout << sc::to_latex(p, space) << "\n"; break;
    case Format::json: std::cout << sc::dump(sc::polynomial_document(p)); break;
  }
}

/// "1,0,2" -> {1,0,2}; the empty string is the empty list.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss{text};
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed integer list '" + text + "'");
    }
  }
  return out;
}

struct SeedRange {
  std::uint64_t first = 1;
  std::uint64_t last = 0;
};

SeedRange parse_seed_range(const std::string& text) {
  static const std::regex pattern{R"(^([0-9]+)\.\.([0-9]+)$)"};
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw std::invalid_argument("seed range must look like 'a..b'");
  SeedRange r{std::stoull(m[1].str()), std::stoull(m[2].str())};
  if (r.first > r.last) throw std::invalid_argument("empty seed range '" + text + "'");
  return r;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SUPERCALC_SEED")) {
    const std::string s{env};
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("SUPERCALC_SEED must be a non-negative integer");
    }
    return std::stoull(s);
  }
  return 1;
}

// ---------------------------------------------------------------------------

struct DeriveArgs {
  std::string dims, idx, f_parity = "even", instance;
  Format format = Format::text;
};

int run_derive(const DeriveArgs& a) {
  if (!a.instance.empty()) {
    auto inst = sc::instance_from_json(sc::read_json_file(a.instance));
    if (!a.idx.empty()) inst.idx = sc::parse_index_list(a.idx);
    sc::validate_instance(inst);
    emit(sc::lhs_concrete(inst), a.format);
    return kExitOk;
  }
  if (a.dims.empty()) throw std::invalid_argument("derive needs --dims or --instance");
  const auto dims = sc::parse_map_dims(a.dims);
  const sc::FunctionSymbol f{"f", dims.target.total(), parity_flag(a.f_parity)};
  emit(sc::lhs_direct(sc::parse_index_list(a.idx), dims, f), a.format, sc::to_string(dims));
  return kExitOk;
}

struct FdbArgs {
  std::string dims, idx, f_parity = "even";
  Format format = Format::text;
};

int run_fdb(const FdbArgs& a) {
  const auto dims = sc::parse_map_dims(a.dims);
  const sc::FunctionSymbol f{"f", dims.target.total(), parity_flag(a.f_parity)};
  emit(sc::fdb_rhs(sc::parse_index_list(a.idx), dims, f), a.format, sc::to_string(dims));
  return kExitOk;
}

struct BellArgs {
  std::optional<std::string> l, r, idx;
  std::string dims = "2|2", method = "combinatorial";
  Format format = Format::text;
};

int run_bell(const BellArgs& a) {
  const sc::FunctionSymbol f{"f", 0, sc::Parity::even};
  const bool multi = a.l || a.r;
  if (multi == a.idx.has_value()) throw std::invalid_argument("bell needs either --l/--r or --idx");
  sc::IndexList idx;
  sc::Dims space;
  if (multi) {
    const sc::BellMultiIndex mi{parse_int_list(a.l.value_or("")), parse_int_list(a.r.value_or(""))};
    idx = mi.to_index_list();
    space = mi.space();
  } else {
    idx = sc::parse_index_list(*a.idx);
    space = sc::parse_dims(a.dims);
  }
  sc::Expression e;
  if (a.method == "combinatorial") {
    e = sc::bell_combinatorial(idx, space, f);
  } else if (a.method == "definition") {
    e = sc::bell_via_definition(idx, space, f);
  } else {
    throw std::invalid_argument("unknown method '" + a.method + "'");
  }
  emit(e, a.format, sc::to_string(space));
  return kExitOk;
}

struct VerifyArgs {
  std::string seeds;
  std::optional<std::uint64_t> count;
  int n_min = 1, n_max = 5, degree = 3;
  std::string source_max = "2|2", target_max = "2|2", mode = "concrete";
  std::vector<std::string> corpus;
  std::string report, save_dir;
  bool full = false, timing = false;
};

int run_verify(const VerifyArgs& a) {
  std::vector<sc::Mode> modes;
  if (a.mode == "abstract" || a.mode == "both") modes.push_back(sc::Mode::abstract);
  if (a.mode == "concrete" || a.mode == "both") modes.push_back(sc::Mode::concrete);
  if (modes.empty()) throw std::invalid_argument("unknown mode '" + a.mode + "'");

  std::vector<sc::Instance> instances;
  for (const auto& path : a.corpus) instances.push_back(sc::instance_from_json(sc::read_json_file(path)));
  if (a.corpus.empty() || !a.seeds.empty() || a.count) {
    if (!a.seeds.empty() && a.count) throw std::invalid_argument("--seeds and --count are exclusive");
    SeedRange range;
    if (!a.seeds.empty()) {
      range = parse_seed_range(a.seeds);
    } else {
      range.first = default_seed();
      range.last = range.first + a.count.value_or(100) - 1;
    }
    const sc::RandomConfig config{sc::parse_dims(a.source_max), sc::parse_dims(a.target_max), a.degree, a.n_min, a.n_max};
    for (auto s = range.first; s <= range.last; ++s) instances.push_back(sc::random_instance(config, s));
  }

  if (!a.save_dir.empty()) {
    std::filesystem::create_directories(a.save_dir);
    for (const auto& inst : instances) {
      std::ofstream out{std::filesystem::path{a.save_dir} / (inst.id + ".json")};
      out << sc::dump(sc::instance_to_json(inst));
    }
  }

  std::vector<sc::Report> reports;
  std::size_t passed = 0;
  for (const auto& inst : instances) {
    bool ok = true;
    for (auto mode : modes) {
      reports.push_back(sc::verify_instance(inst, mode));
      const auto& r = reports.back();
      if (!r.equal) {
        ok = false;
        std::cout << "UNEQUAL " << r.id << " (" << sc::to_string(mode) << ")\n  lhs: " << r.lhs << "\n  rhs: " << r.rhs << "\n";
      }
    }
    if (ok) ++passed;
  }
  if (!a.report.empty()) {
    std::ofstream out{a.report};
    if (!out) throw std::invalid_argument("cannot write report '" + a.report + "'");
    out << sc::dump(sc::report_to_json(reports, a.full, a.timing));
  }
  std::cout << passed << "/" << instances.size() << " equal\n";
  return passed == instances.size() ? kExitOk : kExitUnequal;
}

struct RenderArgs {
  std::string input;
  Format format = Format::latex;
};

int run_render(const RenderArgs& a) {
  const auto doc = sc::read_json_file(a.input);
  const std::string kind = doc.is_object() ? doc.value("kind", "") : "";
  if (kind == "expression") {
    sc::check_schema(doc, "expression");
    emit(sc::expression_from_json(doc.at("terms")), a.format, doc.at("dims").get<std::string>());
  } else if (kind == "polynomial") {
    sc::check_schema(doc, "polynomial");
    emit(sc::poly_from_json(doc.at("terms"), sc::parse_dims(doc.at("dims").get<std::string>())), a.format);
  } else {
    throw std::invalid_argument("render expects an expression or polynomial document");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact super Faa di Bruno and super Bell polynomial calculator"};
  app.require_subcommand(1, 1);

  const std::string idx_help = "comma-separated x<k>/xi<k>, left to right = a_1..a_n (a_1 applied first)";

  DeriveArgs derive;
  auto* derive_cmd = app.add_subcommand("derive", "apply the partials directly to f(y(x))");
  derive_cmd->add_option("--dims", derive.dims, "map dims, e.g. '1|1->2|1'");
  derive_cmd->add_option("--idx", derive.idx, idx_help);
  derive_cmd->add_option("--f-parity", derive.f_parity, "parity of f")->check(CLI::IsMember({"even", "odd"}));
  derive_cmd->add_option("--instance", derive.instance, "instance JSON file for a concrete derivative")->check(CLI::ExistingFile);
  derive_cmd->add_option("--format", derive.format, "output format")->transform(CLI::CheckedTransformer(kFormats));

  FdbArgs fdb;
  auto* fdb_cmd = app.add_subcommand("fdb", "print the super Faa di Bruno expansion");
  fdb_cmd->add_option("--dims", fdb.dims, "map dims, e.g. '1|1->1|1'")->required();
  fdb_cmd->add_option("--idx", fdb.idx, idx_help)->required();
  fdb_cmd->add_option("--f-parity", fdb.f_parity, "parity of f")->check(CLI::IsMember({"even", "odd"}));
  fdb_cmd->add_option("--format", fdb.format, "output format")->transform(CLI::CheckedTransformer(kFormats));

  BellArgs bell;
  auto* bell_cmd = app.add_subcommand("bell", "print a generalized super Bell polynomial");
  bell_cmd->add_option("--l", bell.l, "even multi-index, e.g. '2,1'");
  bell_cmd->add_option("--r", bell.r, "odd multi-index of 0/1 entries, e.g. '1,1'");
  bell_cmd->add_option("--idx", bell.idx, idx_help);
  bell_cmd->add_option("--dims", bell.dims, "space dims for --idx");
  bell_cmd->add_option("--method", bell.method, "combinatorial or definition")
      ->check(CLI::IsMember({"combinatorial", "definition"}));
  bell_cmd->add_option("--format", bell.format, "output format")->transform(CLI::CheckedTransformer(kFormats));

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check formula instances against direct differentiation");
  verify_cmd->add_option("--seeds", verify.seeds, "seed range 'a..b'");
  verify_cmd->add_option("--count", verify.count, "number of seeds starting at $SUPERCALC_SEED (default 1)");
  verify_cmd->add_option("--n-min", verify.n_min, "minimum index list length");
  verify_cmd->add_option("--n-max", verify.n_max, "maximum index list length");
  verify_cmd->add_option("--degree", verify.degree, "maximum even degree of random polynomials");
  verify_cmd->add_option("--source-max", verify.source_max, "largest source dims");
  verify_cmd->add_option("--target-max", verify.target_max, "largest target dims");
  verify_cmd->add_option("--mode", verify.mode, "abstract, concrete or both")
      ->check(CLI::IsMember({"abstract", "concrete", "both"}));
  verify_cmd->add_option("--corpus", verify.corpus, "instance JSON files")->check(CLI::ExistingFile);
  verify_cmd->add_option("--report", verify.report, "write a JSON report here");
  verify_cmd->add_option("--save-instances", verify.save_dir, "write each instance as JSON into this directory");
  verify_cmd->add_flag("--full", verify.full, "include canonical forms for passing entries");
  verify_cmd->add_flag("--timing", verify.timing, "include timings in the report");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "re-emit a stored expression or polynomial");
  render_cmd->add_option("--input", render.input, "JSON document")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("--format", render.format, "output format")->transform(CLI::CheckedTransformer(kFormats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*derive_cmd) return run_derive(derive);
    if (*fdb_cmd) return run_fdb(fdb);
    if (*bell_cmd) return run_bell(bell);
    if (*verify_cmd) return run_verify(verify);
    if (*render_cmd) return run_render(render);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
