// Command-line surface: validate documents, report regular-open structure
// and predicates, compute entropy reports, run the shift backend and the
// randomized verification suite.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regent/regent.hpp"

namespace {

using regent::Json;

/// Documents loaded so far, keyed by path; each validates on first load.
struct Workspace {
  regent::LogBase base = regent::LogBase::natural;
  std::map<std::string, regent::SpacePtr> spaces;

  regent::SpacePtr space(const std::string& path) {
    auto it = spaces.find(path);
    if (it != spaces.end()) return it->second;
    regent::SpacePtr s = regent::space_from_json(regent::load_json_file(path));
    spaces.emplace(path, s);
    return s;
  }
};

regent::LogBase parse_base(const std::string& name) {
  if (name == "e") return regent::LogBase::natural;
  if (name == "2") return regent::LogBase::two;
  regent::fail(regent::ErrorKind::parse_error, "--base must be e or 2");
}

regent::PointSet parse_point_list(const std::string& text, int width) {
  std::vector<int> indices;
  std::string token;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!token.empty()) {
        indices.push_back(std::stoi(token));
        token.clear();
      }
    } else {
      token += c;
    }
  }
  return regent::PointSet::of(width, indices);
}

void maybe_write(const std::string& out_path, const Json& payload) {
  if (!out_path.empty()) regent::write_text_file(out_path, regent::dump_canonical(payload));
}

std::string verdict(bool b) { return b ? "true" : "false"; }

int cmd_check(Workspace& ws, const std::string& space_path, const std::string& map_path, const std::string& out_path) {
  regent::SpacePtr space = ws.space(space_path);
  Json out;
  std::printf("space: %d points, %zu opens\n", space->point_count(), space->opens().size());
  std::printf("regular opens (%zu):", space->regular_opens().size());
  for (const auto& r : space->regular_opens()) std::printf(" %s", r.to_string().c_str());
  std::printf("\n");

  regent::PredicateResult hausdorff = regent::is_hausdorff(*space);
  std::printf("Hausdorff: %s", verdict(hausdorff.holds).c_str());
  if (hausdorff.witness) {
    std::printf(", witness points (%d,%d)", hausdorff.witness->point_pair->first, hausdorff.witness->point_pair->second);
  }
  std::printf("\n");

  regent::PredicateResult rspace = regent::is_r_space(*space);
  std::printf("R-space: %s", verdict(rspace.holds).c_str());
  if (rspace.witness) {
    std::printf(", witness %s U %s", rspace.witness->sets[0].to_string().c_str(),
                rspace.witness->sets[1].to_string().c_str());
  }
  std::printf("\n");

  out["points"] = space->point_count();
  out["opens"] = static_cast<int>(space->opens().size());
  Json catalogue = Json::array();
  for (const auto& r : space->regular_opens()) catalogue.push_back(regent::io_detail::set_to_json(r));
  out["regular_opens"] = std::move(catalogue);
  out["hausdorff"] = hausdorff.holds;
  if (hausdorff.witness) {
    out["hausdorff_witness"] = Json::array({hausdorff.witness->point_pair->first, hausdorff.witness->point_pair->second});
  }
  out["r_space"] = rspace.holds;
  if (rspace.witness) {
    out["r_space_witness"] = Json::array({regent::io_detail::set_to_json(rspace.witness->sets[0]),
                                          regent::io_detail::set_to_json(rspace.witness->sets[1])});
  }

  if (!map_path.empty()) {
    regent::RMap f = regent::map_from_json(regent::load_json_file(map_path), space);
    std::printf("R-map: %s", verdict(f.verified).c_str());
    if (f.failing_regular) std::printf(", witness %s", f.failing_regular->to_string().c_str());
    std::printf("\n");
    out["r_map"] = f.verified;
    if (f.failing_regular) out["r_map_witness"] = regent::io_detail::set_to_json(*f.failing_regular);
  }
  maybe_write(out_path, out);
  return 0;
}

void print_entropy_report(const regent::EntropyReport& report) {
  std::printf("  m   a_m           a_m/m\n");
  for (std::size_t i = 0; i < report.a_seq.size(); ++i) {
    std::printf("%3zu   %-12.9f  %-12.9f\n", i + 1, report.a_seq[i], report.a_seq[i] / static_cast<double>(i + 1));
  }
  if (report.cycle) {
    std::printf("cycle: preperiod %d, period %d\n", report.cycle->preperiod, report.cycle->period);
  }
  std::printf("fekete_inf: %.9f\n", report.fekete_inf);
  std::printf("value: %.9f (%s, log base %s, certificate %s)\n", report.value, report.exact ? "exact" : "estimate",
              regent::to_string(report.log_base), report.certificate.c_str());
}

int cmd_entropy(Workspace& ws, const std::string& space_path, const std::string& map_path,
                const std::string& cover_path, const std::string& k_text, int m_max, const std::string& out_path) {
  regent::SpacePtr space = ws.space(space_path);
  regent::RMap f = regent::map_from_json(regent::load_json_file(map_path), space);
  if (!f.verified) {
    regent::fail(regent::ErrorKind::not_r_map,
                 "map fails the R-map check, witness " + f.failing_regular->to_string());
  }
  regent::Cover cover = cover_path.empty() ? regent::finest_regular_cover(space)
                                           : regent::cover_from_json(regent::load_json_file(cover_path), space);
  regent::PointSet target = k_text.empty() ? regent::PointSet::full_set(space->point_count())
                                           : parse_point_list(k_text, space->point_count());
  regent::EntropyOptions opts;
  opts.m_max = m_max;
  opts.base = ws.base;
  regent::EntropyReport report = regent::entropy_rel_cover(f, cover, target, opts);
  print_entropy_report(report);
  maybe_write(out_path, regent::entropy_report_to_json(report));
  return 0;
}

int cmd_sft(Workspace& ws, const std::string& sft_path, int m_max, const std::string& out_path) {
  regent::SftSystem sft = regent::sft_from_json(regent::load_json_file(sft_path));
  std::printf("alphabet: %d symbols after pruning\n", sft.alphabet);
  regent::EntropyReport report = regent::sft_entropy(sft, m_max, ws.base);
  const double oracle_ln = regent::spectral_entropy(sft);
  const double oracle = ws.base == regent::LogBase::natural ? oracle_ln : oracle_ln / std::log(2.0);
  std::printf("  m   words (log)   per symbol\n");
  for (std::size_t i = 0; i < report.a_seq.size(); ++i) {
    std::printf("%3zu   %-12.9f  %-12.9f\n", i + 1, report.a_seq[i], report.a_seq[i] / static_cast<double>(i + 1));
  }
  std::printf("fekete_inf: %.9f\n", report.fekete_inf);
  std::printf("spectral oracle: %.9f (gap %.9f)\n", oracle, report.fekete_inf - oracle);
  std::printf("value: %.9f (%s)\n", report.value, report.exact ? "exact" : "estimate");
  Json out = regent::entropy_report_to_json(report);
  out["spectral_oracle"] = oracle;
  maybe_write(out_path, out);
  return 0;
}

int cmd_product(Workspace& ws, const std::vector<std::string>& paths, const std::string& out_path) {
  regent::SpacePtr left = ws.space(paths[0]);
  regent::SpacePtr right = ws.space(paths[1]);
  regent::RMap f = regent::map_from_json(regent::load_json_file(paths[2]), left);
  regent::RMap h = regent::map_from_json(regent::load_json_file(paths[3]), right);
  if (!f.verified || !h.verified) regent::fail(regent::ErrorKind::not_r_map, "a factor map fails the R-map check");
  regent::ProductSpace prod = regent::product_space(left, right);
  regent::RMap fh = regent::product_map(prod, f, h);
  std::printf("product: %d points, %zu opens, %zu regular opens\n", prod.product->point_count(),
              prod.product->opens().size(), prod.product->regular_opens().size());
  std::printf("product map R-map: %s\n", verdict(fh.verified).c_str());
  Json out;
  out["points"] = prod.product->point_count();
  out["r_map"] = fh.verified;
  if (fh.verified) {
    regent::EntropyOptions opts;
    opts.base = ws.base;
    regent::EntropyReport ep = regent::entropy_n(fh, opts);
    regent::EntropyReport ef = regent::entropy_n(f, opts);
    regent::EntropyReport eh = regent::entropy_n(h, opts);
    std::printf("entropy(product) = %.9f %s entropy(left) + entropy(right) = %.9f\n", ep.value,
                ep.value <= ef.value + eh.value + regent::kLogSlack ? "<=" : ">", ef.value + eh.value);
    out["entropy_product"] = regent::entropy_report_to_json(ep);
    out["entropy_left"] = regent::entropy_report_to_json(ef);
    out["entropy_right"] = regent::entropy_report_to_json(eh);
  }
  maybe_write(out_path, out);
  return 0;
}

int cmd_verify(const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<int> instances,
               const std::vector<std::string>& theorems, const std::string& out_path) {
  regent::SuiteConfig config;
  if (!config_path.empty()) config = regent::suite_config_from_json(regent::load_json_file(config_path));
  if (seed) config.seed = *seed;
  if (instances) config.instances = *instances;
  if (!theorems.empty()) config.theorems = theorems;
  regent::SuiteReport report = regent::run_suite(config);
  for (const regent::TheoremOutcome& outcome : report.results) {
    std::printf("%-30s tried %4d  applicable %4d  passed %4d  failed %4d  skipped %4d\n", outcome.id.c_str(),
                outcome.tried, outcome.applicable, outcome.passed, outcome.failed, outcome.skipped);
    for (const regent::SuiteFailure& failure : outcome.failures) {
      std::printf("    FAIL seed=%llu %s: %s\n", static_cast<unsigned long long>(failure.seed),
                  failure.instance.c_str(), failure.detail.c_str());
    }
  }
  std::printf("%s\n", report.all_passed ? "all checks passed" : "FAILURES PRESENT");
  maybe_write(out_path, regent::suite_report_to_json(report));
  return report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact nearly-entropy engine for finite topological systems"};
  app.require_subcommand(1);
  Workspace ws;

  std::string base_name = "e";
  app.add_option("--base", base_name, "log base for entropy values (e or 2)")->check(CLI::IsMember({"e", "2"}));

  std::string space_path, map_path, cover_path, k_text, out_path, sft_path, config_path;
  int m_max = 12;
  int sft_m_max = 20;
  std::vector<std::string> product_paths;
  std::optional<std::uint64_t> seed;
  std::optional<int> instances;
  std::vector<std::string> theorem_filter;

  // Lets the global --base be written after the subcommand as well.
  app.fallthrough();

  CLI::App* check = app.add_subcommand("check", "validate a space (and optional map) and print predicates");
  check->add_option("space", space_path, "space document")->required();
  check->add_option("map", map_path, "map document");
  check->add_option("--out", out_path, "write the JSON report here");

  CLI::App* entropy = app.add_subcommand("entropy", "entropy report for a map on a space");
  entropy->add_option("space", space_path, "space document")->required();
  entropy->add_option("map", map_path, "map document")->required();
  entropy->add_option("--cover", cover_path, "cover document (default: finest regular cover)");
  entropy->add_option("--K", k_text, "invariant target set, e.g. 0,1,2 (default: whole space)");
  entropy->add_option("--mmax", m_max, "join depth cap");
  entropy->add_option("--out", out_path, "write the JSON report here");

  CLI::App* sft = app.add_subcommand("sft", "entropy report for a subshift of finite type");
  sft->add_option("shift", sft_path, "shift document")->required();
  sft->add_option("--mmax", sft_m_max, "word length cap");
  sft->add_option("--out", out_path, "write the JSON report here");

  CLI::App* product = app.add_subcommand("product", "product-system report for two maps");
  product->add_option("files", product_paths, "space1 space2 map1 map2")->expected(4);
  product->add_option("--out", out_path, "write the JSON report here");

  CLI::App* verify = app.add_subcommand("verify", "run the randomized verification suite");
  verify->add_option("config", config_path, "suite config document");
  verify->add_option("--seed", seed, "override the suite seed");
  verify->add_option("--instances", instances, "override instances per check");
  verify->add_option("--theorem", theorem_filter, "run only the named checks");
  verify->add_option("--out", out_path, "write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    ws.base = parse_base(base_name);
    if (check->parsed()) return cmd_check(ws, space_path, map_path, out_path);
    if (entropy->parsed()) return cmd_entropy(ws, space_path, map_path, cover_path, k_text, m_max, out_path);
    if (sft->parsed()) return cmd_sft(ws, sft_path, sft_m_max, out_path);
    if (product->parsed()) return cmd_product(ws, product_paths, out_path);
    if (verify->parsed()) return cmd_verify(config_path, seed, instances, theorem_filter, out_path);
  } catch (const regent::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
