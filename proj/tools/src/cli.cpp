#include <CLI11.hpp>

#include <iostream>

#include "pgequiv/codefile.hpp"
#include "pgequiv/errors.hpp"
#include "pgequiv_cli/commands.hpp"

namespace pgequiv::cli {

namespace {

std::vector<GeneratorMatrix> load(const std::string& path) {
  if (path == "-") return read_codes(std::cin, "<stdin>");
  return read_codes_file(path);
}

GeneratorMatrix load_one(const std::string& path) {
  auto codes = load(path);
  if (codes.size() != 1)
    throw std::invalid_argument(path + ": expected exactly one code, found " + std::to_string(codes.size()));
  return std::move(codes.front());
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Equivalence and automorphisms of linear codes over finite fields"};
  app.require_subcommand(1);

  unsigned k = 3;
  unsigned q = 2;
  std::optional<unsigned> modulus;

  auto* points = app.add_subcommand("points", "List the points of PG(k-1, q)");
  points->add_option("-k", k, "Vector space dimension")->required();
  points->add_option("-q", q, "Field order")->required();
  points->add_option("--modulus", modulus, "Modulus for composite q (base-p digit integer)");

  std::string file1;
  std::string file2;
  auto* chi = app.add_subcommand("chi", "Print characteristic vectors");
  chi->add_option("file", file1, "Code file ('-' for standard input)")->required();

  std::string algo_name = "auto";
  auto* equiv = app.add_subcommand("equiv", "Decide whether two codes are equivalent");
  equiv->add_option("file1", file1)->required();
  equiv->add_option("file2", file2)->required();
  equiv->add_option("--algo", algo_name, "ceimpg, cesimpg or auto")->check(CLI::IsMember({"ceimpg", "cesimpg", "auto"}));

  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::string random_spec;
  auto* classify_cmd = app.add_subcommand("classify", "Partition codes into equivalence classes");
  classify_cmd->add_option("file", file1, "Code file ('-' for standard input)");
  classify_cmd->add_option("--algo", algo_name, "ceimpg, cesimpg or auto")
      ->check(CLI::IsMember({"ceimpg", "cesimpg", "auto"}));
  classify_cmd->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
  classify_cmd->add_option("--random", random_spec, "Classify a generated batch q:k:n:count instead of a file");
  classify_cmd->add_option("--seed", seed, "Seed for --random");

  std::size_t n = 10;
  std::size_t count = 1;
  bool projective = false;
  auto* gen = app.add_subcommand("gen", "Write random codes in code file format");
  gen->add_option("-n", n, "Length")->required();
  gen->add_option("-k", k, "Dimension")->required();
  gen->add_option("-q", q, "Field order")->required();
  gen->add_option("--modulus", modulus, "Modulus for composite q");
  gen->add_option("--count", count, "Number of codes");
  gen->add_option("--seed", seed, "Random seed");
  gen->add_flag("--projective", projective, "Distinct points only");

  auto* aut = app.add_subcommand("autgroup", "Automorphism group order and generators");
  aut->add_option("file", file1, "Code file ('-' for standard input)")->required();

  std::vector<std::string> rows;
  auto* bench = app.add_subcommand("bench", "Generate random batches and classify them with both algorithms");
  bench->add_option("--row", rows, "Batch q:k:n:count (repeatable; default 3:3:10:1000)");
  bench->add_option("--seed", seed, "Random seed");
  bench->add_option("--jobs", jobs, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    const EquivOptions options = options_from_env();
    if (*points) {
      cmd_points(k, make_field(q, modulus), std::cout);
    } else if (*chi) {
      cmd_chi(load(file1), std::cout);
    } else if (*equiv) {
      return cmd_equiv(load_one(file1), load_one(file2), parse_algorithm(algo_name), options, std::cout);
    } else if (*classify_cmd) {
      std::vector<GeneratorMatrix> codes;
      if (!random_spec.empty()) {
        if (!file1.empty()) throw std::invalid_argument("give either a file or --random, not both");
        const auto row = parse_bench_row(random_spec);
        codes = random_batch(row.n, row.k, Field::make(row.q), row.count, seed, false);
      } else {
        if (file1.empty()) throw std::invalid_argument("classify needs a code file or --random");
        codes = load(file1);
      }
      ClassifyOptions co;
      co.algorithm = parse_algorithm(algo_name);
      co.jobs = jobs;
      co.equiv = options;
      print_report(run_classify(codes, co), co.algorithm, std::cout);
    } else if (*gen) {
      cmd_gen(n, k, make_field(q, modulus), count, seed, projective, std::cout);
    } else if (*aut) {
      cmd_autgroup(load(file1), options, std::cout);
    } else if (*bench) {
      if (rows.empty()) rows.push_back("3:3:10:1000");
      std::vector<BenchResult> results;
      for (const auto& r : rows) results.push_back(run_bench(parse_bench_row(r), seed, jobs, options));
      print_bench(results, std::cout);
      for (const auto& r : results)
        if (r.ceimpg_classes != r.cesimpg_classes || r.failures) return kExitError;
    }
  } catch (const ParseError& e) {
    std::cerr << "pgequiv: " << e.what() << '\n';
    return kExitError;
  } catch (const ResourceError& e) {
    std::cerr << "pgequiv: resource limit: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "pgequiv: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}

}  // namespace pgequiv::cli
