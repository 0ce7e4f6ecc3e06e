// cmknot: classify the parametrized CM-field models, sweep residue grids,
// and run the lemma-verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "plocal/cli.hpp"

namespace {

int deliver(const plocal::cli::CommandResult& res, const std::string& output_path) {
  if (!res.error.empty()) std::cerr << res.error;
  if (!res.output.empty()) {
    if (output_path.empty()) {
      std::cout << res.output;
    } else {
      std::ofstream out(output_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot open output file: " << output_path << "\n";
        return 2;
      }
      out << res.output;
    }
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact p-local criteria engine for the CM-field classification models"};
  app.require_subcommand(1);

  std::string variant_str, emit, output_path, a_str, b_str, c_str;
  long long p = 0;
  bool unchecked = false;

  auto* classify = app.add_subcommand("classify", "classify a single parameter tuple");
  classify->add_option("--variant", variant_str, "model variant: deg2 (stub), deg4ng, deg4bq, deg6")->required();
  classify->add_option("--p", p, "odd prime p");
  classify->add_option("--a", a_str, "parameter a (integer)");
  classify->add_option("--b", b_str, "parameter b (integer)");
  classify->add_option("--c", c_str, "parameter c (deg6 only)");
  classify->add_option("--emit", emit, "output format: json (default), table")->default_val("json");
  classify->add_flag("--unchecked", unchecked, "exploration mode: skip the existence constraints");
  classify->add_option("--output", output_path, "write to file instead of stdout");

  long long sweep_p = 0;
  std::string sweep_variant, sweep_emit, sweep_output;
  auto* sweep = app.add_subcommand("sweep", "classify every residue tuple mod p");
  sweep->add_option("--variant", sweep_variant, "model variant: deg4ng, deg4bq, deg6")->required();
  sweep->add_option("--p", sweep_p, "odd prime p (budget: p <= 50)")->required();
  sweep->add_option("--emit", sweep_emit, "output format: csv (default), json")->default_val("csv");
  sweep->add_option("--output", sweep_output, "write to file instead of stdout");

  long long verify_p = 5, verify_depth = 3;
  std::size_t verify_pairs = 50;
  std::vector<std::string> lemmas;
  std::string verify_emit, verify_output;
  auto* verify = app.add_subcommand("verify", "run the lemma catalogue over a residue grid");
  verify->add_option("--p", verify_p, "odd prime for the parameter grid (default 5)");
  verify->add_option("--lemma", lemmas, "lemma id filter (repeatable); default: all plus oracle");
  verify->add_option("--depth", verify_depth, "oracle enumeration depth (default 3)");
  verify->add_option("--pairs", verify_pairs, "number of random lattice pairs for the oracle (default 50)");
  verify->add_option("--emit", verify_emit, "output format: text (default), json")->default_val("text");
  verify->add_option("--output", verify_output, "write to file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed()) {
      if (variant_str == "deg2") {
        // No parameter model exists in degree 2: for an imaginary quadratic
        // field in which p splits, the unramified module of the maximal
        // multiple Zp-extension vanishes exactly when X(k_cyc) is a free
        // Zp-module of rank 1.  Deciding that is a computation on the field
        // itself, outside the scope of this tool.
        std::cout << "deg2: no parameters to classify. X(k~) = 0 holds if and only if X(k_cyc) is\n"
                     "isomorphic to Zp; use a class-group computation on the field to decide it.\n";
        return 0;
      }
      auto variant = plocal::parse_variant(variant_str);
      if (!variant) {
        std::cerr << "unknown variant: " << variant_str << "\n";
        return 2;
      }
      if (p == 0 || a_str.empty() || b_str.empty()) {
        std::cerr << "classify requires --p, --a, --b\n";
        return 2;
      }
      if (*variant == plocal::Variant::Deg6 && c_str.empty()) {
        std::cerr << "deg6 requires --c\n";
        return 2;
      }
      if (*variant != plocal::Variant::Deg6 && !c_str.empty()) {
        std::cerr << "--c is only meaningful for deg6\n";
        return 2;
      }
      plocal::Int a(a_str), b(b_str), c(c_str.empty() ? "0" : c_str);
      return deliver(plocal::cli::cmd_classify(*variant, p, a, b, c, !unchecked, emit), output_path);
    }
    if (sweep->parsed()) {
      auto variant = plocal::parse_variant(sweep_variant);
      if (!variant) {
        std::cerr << "unknown variant: " << sweep_variant << "\n";
        return 2;
      }
      return deliver(plocal::cli::cmd_sweep(*variant, sweep_p, sweep_emit), sweep_output);
    }
    return deliver(plocal::cli::cmd_verify(verify_p, lemmas, verify_depth, verify_pairs, verify_emit),
                   verify_output);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
