// kitelab command-line front end. Exit codes: 0 the property holds or the
// construction succeeded, 1 it fails (a witness is printed), 2 bad usage or
// malformed input.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "kitelab/budget.hpp"
#include "kitelab/connectivity.hpp"
#include "kitelab/errors.hpp"
#include "kitelab/fuzz.hpp"
#include "kitelab/ideals.hpp"
#include "kitelab/io.hpp"
#include "kitelab/kite.hpp"
#include "kitelab/lazy.hpp"
#include "kitelab/pogroups.hpp"
#include "kitelab/report.hpp"
#include "kitelab/riesz.hpp"
#include "kitelab/states.hpp"

using namespace kitelab;
using nlohmann::ordered_json;

namespace {

struct Outcome
{
  int code = 0;
  ordered_json body = ordered_json::object();
};

std::vector<std::uint32_t> parse_list(std::string const &text)
{
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ',' || text[pos] == ' ') {
      ++pos;
      continue;
    }
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos,
                                     text.data() + text.size(), v);
    if (ec != std::errc())
      throw UsageError("bad element list '" + text + "'");
    pos = static_cast<std::size_t>(ptr - text.data());
    out.push_back(v);
  }
  return out;
}

ordered_json elem_list(std::vector<Elem> const &xs, Gpea const &e)
{
  ordered_json out = ordered_json::array();
  for (auto x : xs)
    out.push_back(e.label(x));
  return out;
}

LoadedAlgebra load(std::string const &path)
{
  return validate(read_algebra_file(path));
}

Outcome cmd_verify(std::string const &path)
{
  auto file = read_algebra_file(path);
  Outcome out;
  out.body["file"] = path;
  out.body["kind"] = file.kind == AlgebraFile::Kind::Pea ? "pea" : "gpea";
  out.body["size"] = file.table.size();
  auto report = verify_gpea_axioms(file.table, file.zero);
  if (report.passed() && file.kind == AlgebraFile::Kind::Pea)
    report = verify_pea_axioms(Gpea::make(file.table, file.zero), *file.top);
  ordered_json violations = ordered_json::array();
  for (auto const &v : report.violations)
    violations.push_back({{"axiom", std::string(to_string(v.axiom))},
                          {"witness", v.witness}});
  out.body["valid"] = report.passed();
  out.body["violations"] = violations;
  out.code = report.passed() ? 0 : 1;
  return out;
}

struct KiteArgs
{
  std::string algebra;
  std::size_t n = 1;
  std::string lambda = "id";
  std::string rho = "id";
};

Outcome cmd_kite(KiteArgs const &args, bool verify, std::string const &emit,
                 Budget const &budget)
{
  auto base = load(args.algebra).gpea;
  auto lambda = permutation_from_spec(args.lambda, args.n);
  auto rho = permutation_from_spec(args.rho, args.n);
  Outcome out;
  out.body["lambda"] = to_string(lambda);
  out.body["rho"] = to_string(rho);
  out.body["lr_weakly_commutative"] = is_lr_weakly_commutative(base, lambda, rho);
  auto kite = build_kite_explicit(base, lambda, rho, budget.kite_carrier);
  out.body["size"] = kite.size();
  out.body["symmetric"] = is_symmetric(kite.algebra());
  out.body["components"] = connected_components(lambda, rho).components.size();
  if (verify) {
    auto report =
      verify_pea_axioms(kite.algebra().gpea(), kite.algebra().top());
    out.body["pea_axioms"] = report.passed();
    out.code = report.passed() ? 0 : 1;
  }
  if (!emit.empty()) {
    std::ofstream file(emit);
    if (!file)
      throw UsageError("cannot write " + emit);
    file << emit_algebra(kite.algebra());
    out.body["written"] = emit;
  }
  return out;
}

Outcome cmd_rdp(std::string const &path, std::string const &level,
                std::optional<KiteArgs> const &kite_args, Budget const &budget)
{
  auto property = riesz_property_from_string(level);
  auto loaded = load(path);
  Gpea target = loaded.gpea;
  Outcome out;
  if (kite_args) {
    auto kite = build_kite_explicit(
      loaded.gpea, permutation_from_spec(kite_args->lambda, kite_args->n),
      permutation_from_spec(kite_args->rho, kite_args->n),
      budget.kite_carrier);
    target = kite.algebra().gpea();
    out.body["subject"] = "kite of size " + std::to_string(kite.size());
  } else {
    out.body["subject"] = path;
  }
  auto report = check_riesz(target, property, budget.rdp_carrier);
  out.body["property"] = std::string(to_string(property));
  out.body["holds"] = report.holds;
  out.body["instances"] = report.instances;
  if (!report.holds)
    out.body["counterexample"] = elem_list(report.counterexample, target);
  else if (!report.witness.empty())
    out.body["witness"] = elem_list(report.witness, target);
  if (report.table)
    out.body["sample_table"] = {
      {"quadruple", elem_list(report.table_quadruple, target)},
      {"c11", target.label(report.table->c11)},
      {"c12", target.label(report.table->c12)},
      {"c21", target.label(report.table->c21)},
      {"c22", target.label(report.table->c22)}};
  out.code = report.holds ? 0 : 1;
  return out;
}

Outcome cmd_ideals(std::string const &path, bool normal_only,
                   Budget const &budget)
{
  auto e = load(path).gpea;
  Outcome out;
  ordered_json list = ordered_json::array();
  for (auto const &i : enumerate_ideals(e, normal_only, budget.ideal_carrier))
    list.push_back({{"members", elem_list(i.members, e)},
                    {"normal", is_normal(e, i)},
                    {"maximal", is_maximal_ideal(e, i)}});
  out.body["ideals"] = list;
  auto least = least_nontrivial_normal_ideal(e, budget.ideal_carrier);
  out.body["least_nontrivial_normal"] =
    least ? ordered_json(elem_list(least->members, e)) : ordered_json("none");
  out.body["subdirectly_irreducible"] =
    is_subdirectly_irreducible(e, budget.ideal_carrier);
  return out;
}

Outcome cmd_components(std::size_t n, std::string const &lambda_spec,
                       std::string const &rho_spec)
{
  auto lambda = permutation_from_spec(lambda_spec, n);
  auto rho = permutation_from_spec(rho_spec, n);
  auto parts = connected_components(lambda, rho);
  Outcome out;
  out.body["sigma"] = to_string(parts.sigma);
  out.body["count"] = parts.components.size();
  ordered_json comps = ordered_json::array();
  for (auto const &c : parts.components)
    comps.push_back(c);
  out.body["components"] = comps;
  if (parts.components.size() == 1) {
    auto canon = canonicalize(lambda, rho);
    out.body["canonical"] = {{"upper", to_string(canon.upper)},
                             {"lower", to_string(canon.lower)},
                             {"lambda", to_string(canon.lambda)},
                             {"rho", to_string(canon.rho)}};
  }
  return out;
}

Outcome cmd_quotient(std::string const &path, std::string const &members)
{
  auto e = load(path).gpea;
  auto ideal = ideal_closure(e, parse_list(members));
  Outcome out;
  out.body["ideal"] = elem_list(ideal.members, e);
  out.body["normal"] = is_normal(e, ideal);
  auto cong = congruence_from_normal_ideal(e, ideal);
  out.body["congruence"] = cong.is_congruence;
  if (!cong.is_congruence) {
    out.body["failure"] = cong.failure;
    out.body["witness"] = elem_list(cong.witness, e);
    out.code = 1;
    return out;
  }
  auto q = quotient(e, ideal);
  out.body["blocks"] = q.representatives.size();
  out.body["block_of"] = q.block_of;
  out.body["algebra"] = emit_algebra(q.algebra);
  return out;
}

LazyElement parse_lazy(LazyKite const &kite, std::string const &text)
{
  if (text.size() < 2 || text[1] != ':' || (text[0] != 'L' && text[0] != 'U'))
    throw UsageError("element must look like L:1,2 or U:0,3, got '" + text + "'");
  std::vector<Value> coords;
  for (auto v : parse_list(text.substr(2)))
    coords.push_back(v);
  return kite.make(text[0] == 'L' ? Sort::Lower : Sort::Upper, coords);
}

Outcome cmd_decompose(KiteArgs const &args,
                      std::vector<std::string> const &quad)
{
  std::shared_ptr<LazyBase const> base;
  if (args.algebra.empty())
    base = std::make_shared<NatChain>();
  else
    base = std::make_shared<FiniteBase>(load(args.algebra).gpea);
  LazyKite kite(base, args.n,
                IndexMap::finite(permutation_from_spec(args.lambda, args.n)),
                IndexMap::finite(permutation_from_spec(args.rho, args.n)));
  std::vector<LazyElement> q;
  for (auto const &t : quad)
    q.push_back(parse_lazy(kite, t));
  auto table = kite_rdp_decompose(kite, q[0], q[1], q[2], q[3]);
  bool ok = table_certifies(kite, table, q[0], q[1], q[2], q[3]);
  Outcome out;
  out.body["base"] = base->name();
  out.body["c11"] = kite.to_string(table.c11);
  out.body["c12"] = kite.to_string(table.c12);
  out.body["c21"] = kite.to_string(table.c21);
  out.body["c22"] = kite.to_string(table.c22);
  out.body["certified"] = ok;
  out.code = ok ? 0 : 1;
  return out;
}

Outcome cmd_states(std::string const &path, Budget const &budget)
{
  auto loaded = load(path);
  if (!loaded.pea)
    throw UsageError("states need a pea file");
  auto const &p = *loaded.pea;
  auto states = find_states(p, budget.state_carrier);
  Outcome out;
  ordered_json list = ordered_json::array();
  for (auto const &s : states) {
    ordered_json values = ordered_json::array();
    for (auto const &v : s)
      values.push_back(to_string(v));
    auto k = kernel(p, s);
    list.push_back({{"values", values},
                    {"kernel", elem_list(k, p.gpea())},
                    {"kernel_normal", is_normal(p.gpea(), Ideal{k})}});
  }
  out.body["extreme_points"] = list;
  out.code = states.empty() ? 1 : 0;
  return out;
}

Outcome cmd_iso(std::size_t n, bool wreath, IsoOptions const &options)
{
  auto report = wreath ? wreath_iso_spotcheck(options)
                       : example_iso_spotcheck(n, options);
  Outcome out;
  out.body["model"] = wreath ? "W(Z)" : "G_" + std::to_string(n);
  out.body["passed"] = report.passed;
  out.body["candidate"] =
    report.candidate ? to_string(*report.candidate, wreath) : "none";
  out.body["candidates_tried"] = report.candidates_tried;
  out.body["pairs_checked"] = report.pairs_checked;
  out.body["definedness_checked"] = report.definedness_checked;
  out.body["box_elements"] = report.box_elements;
  out.body["bijective_on_box"] = report.bijective_on_box;
  out.body["seed"] = report.seed;
  if (!report.failure.empty())
    out.body["failure"] = report.failure;
  out.code = report.passed ? 0 : 1;
  return out;
}

Outcome cmd_fuzz(FuzzConfig const &config, std::string const &archive)
{
  auto result = fuzz(config);
  Outcome out;
  out.body = fuzz_summary(result);
  if (!archive.empty())
    out.body["written"] = write_archive(result, archive);
  out.code = result.asserted_failures() == 0 ? 0 : 1;
  return out;
}

Outcome cmd_report(std::string const &dir, AuditOptions const &options)
{
  Outcome out;
  out.body = audit_directory(dir, options);
  bool clean = out.body["invalid_files"] == 0;
  if (out.body.contains("fuzz"))
    clean = clean && out.body["fuzz"]["asserted_failures"] == 0;
  out.code = clean ? 0 : 1;
  return out;
}

void add_kite_options(CLI::App *cmd, KiteArgs &args)
{
  cmd->add_option("--n", args.n, "index set size")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", args.lambda,
                  "id, cycle, swap, shift:k or an image list");
  cmd->add_option("--rho", args.rho, "id, cycle, swap, shift:k or an image list");
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Generalized pseudo effect algebras, kites and Riesz properties"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "print the report as JSON");

  std::function<Outcome(Budget const &)> run;

  std::string file;
  auto *verify = app.add_subcommand("verify", "check the axioms of a file");
  verify->add_option("file", file)->required();
  verify->callback([&] { run = [&](Budget const &) { return cmd_verify(file); }; });

  KiteArgs kite_args;
  bool kite_verify = false;
  std::string emit;
  auto *kite = app.add_subcommand("kite", "build an explicit kite");
  kite->add_option("--algebra", kite_args.algebra, "base algebra file")->required();
  add_kite_options(kite, kite_args);
  kite->add_flag("--verify", kite_verify, "check the PEA axioms of the result");
  kite->add_option("--emit", emit, "write the kite as an algebra file");
  kite->callback([&] {
    run = [&](Budget const &b) { return cmd_kite(kite_args, kite_verify, emit, b); };
  });

  std::string level = "rdp";
  KiteArgs rdp_kite;
  bool rdp_on_kite = false;
  auto *rdp = app.add_subcommand("rdp", "check a Riesz property");
  rdp->add_option("file", file)->required();
  rdp->add_option("--level", level, "rip, rdp0, rdp, rdp1 or rdp2");
  rdp->add_flag("--kite", rdp_on_kite, "check the kite over the file instead");
  add_kite_options(rdp, rdp_kite);
  rdp->callback([&] {
    run = [&](Budget const &b) {
      return cmd_rdp(file, level,
                     rdp_on_kite ? std::optional<KiteArgs>(rdp_kite)
                                 : std::nullopt,
                     b);
    };
  });

  bool normal_only = false;
  auto *ideals = app.add_subcommand("ideals", "enumerate ideals");
  ideals->add_option("file", file)->required();
  ideals->add_flag("--normal", normal_only, "normal ideals only");
  ideals->callback([&] {
    run = [&](Budget const &b) { return cmd_ideals(file, normal_only, b); };
  });

  KiteArgs comp_args;
  auto *components =
    app.add_subcommand("components", "orbits of rho o lambda^-1");
  add_kite_options(components, comp_args);
  components->callback([&] {
    run = [&](Budget const &) {
      return cmd_components(comp_args.n, comp_args.lambda, comp_args.rho);
    };
  });

  std::string members;
  auto *quot = app.add_subcommand("quotient", "quotient by a normal ideal");
  quot->add_option("file", file)->required();
  quot->add_option("--ideal", members, "generators, e.g. 1,2")->required();
  quot->callback([&] {
    run = [&](Budget const &) { return cmd_quotient(file, members); };
  });

  KiteArgs dec_args;
  std::vector<std::string> quad;
  auto *dec = app.add_subcommand(
    "decompose", "refine a1 + a2 = b1 + b2 in a lazy kite (base N by default)");
  dec->add_option("--algebra", dec_args.algebra, "finite base instead of N");
  add_kite_options(dec, dec_args);
  dec->add_option("elements", quad, "a1 a2 b1 b2, each like L:1,2 or U:0,3")
    ->required()
    ->expected(4);
  dec->callback([&] {
    run = [&](Budget const &) { return cmd_decompose(dec_args, quad); };
  });

  auto *states = app.add_subcommand("states", "extreme states of a PEA");
  states->add_option("file", file)->required();
  states->callback([&] {
    run = [&](Budget const &b) { return cmd_states(file, b); };
  });

  std::size_t iso_n = 1;
  bool wreath = false;
  IsoOptions iso_opts;
  auto *iso = app.add_subcommand(
    "iso", "sampled comparison of the lazy N kite with a twisted po-group");
  iso->add_option("--n", iso_n, "index set size")->check(CLI::PositiveNumber);
  iso->add_flag("--wreath", wreath, "integer index set against W(Z)");
  iso->add_option("--samples", iso_opts.samples, "sampled pairs");
  iso->add_option("--bound", iso_opts.bound, "coordinate bound");
  iso->add_option("--seed", iso_opts.seed, "sampling seed");
  iso->callback([&] {
    run = [&](Budget const &) { return cmd_iso(iso_n, wreath, iso_opts); };
  });

  FuzzConfig fuzz_config;
  std::string archive;
  auto *fz = app.add_subcommand("fuzz", "random GPEAs against the property registry");
  fz->add_option("--seed", fuzz_config.seed, "generator seed");
  fz->add_option("--min-size", fuzz_config.min_size, "smallest carrier");
  fz->add_option("--max-size", fuzz_config.max_size, "largest carrier");
  fz->add_option("--density", fuzz_config.density,
                 "chance that a pair gets a sum before repair");
  fz->add_option("--count", fuzz_config.count, "instances to keep");
  fz->add_flag("--commutative", fuzz_config.commutative,
               "only commutative tables");
  fz->add_flag("!--no-shrink", fuzz_config.shrink,
               "archive counterexamples unshrunk");
  fz->add_flag("--archive-logged", fuzz_config.archive_logged,
               "archive failures of logged properties too");
  fz->add_option("--archive", archive, "directory for shrunk counterexamples");
  fz->callback([&] {
    run = [&](Budget const &) { return cmd_fuzz(fuzz_config, archive); };
  });

  std::string dir;
  AuditOptions audit;
  auto *rep = app.add_subcommand("report", "audit every fixture in a directory");
  rep->add_option("directory", dir)->required();
  rep->add_option("--seed", audit.seed);
  rep->add_option("--fuzz-count", audit.fuzz_count);
  rep->callback([&] {
    run = [&](Budget const &b) {
      audit.budget = b;
      return cmd_report(dir, audit);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto outcome = run(Budget::from_env());
    if (json)
      std::cout << outcome.body.dump(2) << '\n';
    else
      std::cout << render_text(outcome.body);
    return outcome.code;
  } catch (PreconditionError const &e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return 1;
  } catch (AxiomError const &e) {
    std::cerr << "invalid algebra: " << e.what() << '\n';
    return 2;
  } catch (Error const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
