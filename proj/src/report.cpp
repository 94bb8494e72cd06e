#include "kitelab/report.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "kitelab/connectivity.hpp"
#include "kitelab/errors.hpp"
#include "kitelab/ideals.hpp"
#include "kitelab/io.hpp"
#include "kitelab/kite.hpp"
#include "kitelab/riesz.hpp"
#include "kitelab/states.hpp"

namespace kitelab {

using nlohmann::ordered_json;

namespace {

ordered_json riesz_block(Gpea const &e, Budget const &budget)
{
  ordered_json out = ordered_json::object();
  for (auto p : {RieszProperty::RIP, RieszProperty::RDP0, RieszProperty::RDP,
                 RieszProperty::RDP1, RieszProperty::RDP2}) {
    std::string key(to_string(p));
    try {
      out[key] = check_riesz(e, p, budget.rdp_carrier).holds;
    } catch (SizeError const &) {
      out[key] = "skipped";
    }
  }
  return out;
}

ordered_json ideal_block(Gpea const &e, Budget const &budget)
{
  ordered_json out = ordered_json::object();
  try {
    auto all = enumerate_ideals(e, false, budget.ideal_carrier);
    auto normal = std::count_if(all.begin(), all.end(), [&](Ideal const &i) {
      return is_normal(e, i);
    });
    out["ideals"] = all.size();
    out["normal"] = normal;
    out["subdirectly_irreducible"] =
      is_subdirectly_irreducible(e, budget.ideal_carrier);
  } catch (SizeError const &) {
    out["ideals"] = "skipped";
  }
  return out;
}

ordered_json state_block(Pea const &p, Budget const &budget)
{
  ordered_json out = ordered_json::object();
  try {
    auto states = find_states(p, budget.state_carrier);
    out["extreme_points"] = states.size();
    bool kernels_normal = true;
    ordered_json values = ordered_json::array();
    for (auto const &s : states) {
      ordered_json row = ordered_json::array();
      for (auto const &v : s)
        row.push_back(to_string(v));
      values.push_back(row);
      kernels_normal =
        kernels_normal && is_normal(p.gpea(), Ideal{kernel(p, s)});
    }
    out["values"] = values;
    out["kernels_normal"] = kernels_normal;
  } catch (SizeError const &) {
    out["extreme_points"] = "skipped";
  }
  return out;
}

ordered_json kite_block(Gpea const &e, Permutation const &lambda,
                        Permutation const &rho, Budget const &budget)
{
  ordered_json out = ordered_json::object();
  out["lambda"] = to_string(lambda);
  out["rho"] = to_string(rho);
  auto parts = connected_components(lambda, rho);
  out["components"] = parts.components.size();
  if (!is_lr_weakly_commutative(e, lambda, rho)) {
    out["built"] = false;
    out["reason"] = "base not lambda,rho-weakly commutative";
    return out;
  }
  try {
    auto kite = build_kite_explicit(e, lambda, rho, budget.kite_carrier);
    out["built"] = true;
    out["size"] = kite.size();
    out["symmetric"] = is_symmetric(kite.algebra());
    out["riesz"] = riesz_block(kite.algebra().gpea(), budget);
  } catch (SizeError const &err) {
    out["built"] = false;
    out["reason"] = err.what();
  }
  return out;
}

} // namespace

ordered_json audit_file(std::filesystem::path const &path, Budget const &budget)
{
  ordered_json out = ordered_json::object();
  out["file"] = path.filename().string();
  auto loaded = validate(read_algebra_file(path));
  auto const &e = loaded.gpea;
  out["kind"] = loaded.pea ? "pea" : "gpea";
  out["size"] = e.size();
  out["round_trip"] =
    parse_algebra_file(emit_algebra(loaded.file)) == loaded.file;
  out["weakly_commutative"] = is_weakly_commutative(e);
  out["commutative"] = is_commutative(e);
  out["total"] = is_total(e);
  out["directed"] = is_directed(e);
  out["riesz"] = riesz_block(e, budget);
  out["ideals"] = ideal_block(e, budget);
  if (loaded.pea) {
    out["symmetric"] = is_symmetric(*loaded.pea);
    out["perfect"] = check_perfect(*loaded.pea).has_value();
    out["states"] = state_block(*loaded.pea, budget);
  }
  if (loaded.file.lambda)
    out["kite"] =
      kite_block(e, *loaded.file.lambda, *loaded.file.rho, budget);
  return out;
}

ordered_json fuzz_summary(FuzzResult const &result)
{
  ordered_json out = ordered_json::object();
  out["seed"] = result.config.seed;
  out["sizes"] = std::to_string(result.config.min_size) + ".." +
                 std::to_string(result.config.max_size);
  out["density"] = result.config.density;
  out["commutative"] = result.config.commutative;
  out["instances"] = result.corpus.size();
  out["attempts"] = result.attempts;
  out["discarded"] = result.discarded;
  out["deletions"] = result.deletions;
  out["asserted_failures"] = result.asserted_failures();
  ordered_json props = ordered_json::array();
  for (auto const &t : result.tallies) {
    ordered_json p = ordered_json::object();
    p["name"] = t.name;
    p["asserted"] = t.asserted;
    p["held"] = t.held;
    p["failed"] = t.failed;
    p["skipped"] = t.skipped;
    if (!t.first_failure.empty())
      p["first_failure"] = t.first_failure;
    props.push_back(p);
  }
  out["properties"] = props;
  ordered_json archived = ordered_json::array();
  for (auto const &a : result.archived)
    archived.push_back(a.file_name);
  out["archived"] = archived;
  return out;
}

ordered_json audit_directory(std::filesystem::path const &directory,
                             AuditOptions const &options)
{
  if (!std::filesystem::is_directory(directory))
    throw UsageError("not a directory: " + directory.string());
  std::vector<std::filesystem::path> files;
  for (auto const &entry : std::filesystem::directory_iterator(directory)) {
    auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".gpea" || ext == ".pea"))
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  ordered_json out = ordered_json::object();
  out["directory"] = directory.filename().string();
  out["seed"] = options.seed;
  ordered_json audits = ordered_json::array();
  std::size_t errors = 0;
  for (auto const &f : files) {
    try {
      audits.push_back(audit_file(f, options.budget));
    } catch (Error const &err) {
      ++errors;
      audits.push_back({{"file", f.filename().string()}, {"error", err.what()}});
    }
  }
  out["files"] = audits;
  out["invalid_files"] = errors;
  if (options.fuzz_count > 0) {
    FuzzConfig config;
    config.seed = options.seed;
    config.count = options.fuzz_count;
    out["fuzz"] = fuzz_summary(fuzz(config));
  }
  return out;
}

namespace {

void render(std::ostringstream &out, ordered_json const &node, int depth)
{
  std::string pad(depth > 0 ? 2 * depth : 0, ' ');
  if (node.is_object()) {
    for (auto const &[key, value] : node.items()) {
      if (value.is_structured() && !value.empty() &&
          !(value.is_array() && value[0].is_primitive())) {
        out << pad << key << ":\n";
        render(out, value, depth + 1);
      } else {
        out << pad << key << ": ";
        render(out, value, -1);
        out << '\n';
      }
    }
  } else if (node.is_array()) {
    if (depth < 0 || (!node.empty() && node[0].is_primitive())) {
      out << (depth < 0 ? "" : pad) << '[';
      for (std::size_t i = 0; i < node.size(); ++i) {
        out << (i ? " " : "");
        render(out, node[i], -1);
      }
      out << ']';
      if (depth >= 0)
        out << '\n';
      return;
    }
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (node[i].is_array()) {
        out << pad << "- ";
        render(out, node[i], -1);
        out << '\n';
        continue;
      }
      out << pad << "- [" << i << "]\n";
      render(out, node[i], depth + 1);
    }
  } else if (node.is_string()) {
    out << node.get<std::string>();
  } else {
    out << node.dump();
  }
}

} // namespace

std::string render_text(ordered_json const &report)
{
  std::ostringstream out;
  render(out, report, 0);
  return out.str();
}

} // namespace kitelab
