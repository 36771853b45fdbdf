#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jtree/analysis.hpp"
#include "jtree/errors.hpp"
#include "jtree/fixtures.hpp"
#include "jtree/framework.hpp"
#include "jtree/gen.hpp"
#include "jtree/json_io.hpp"
#include "jtree/jt2p.hpp"
#include "jtree/jtg.hpp"
#include "jtree/schreier.hpp"
#include "jtree/verify.hpp"

namespace {

using jtree::Json;

std::uint64_t effective_seed(std::uint64_t cli_seed) {
  if (const char* env = std::getenv("JTREE_SEED")) return std::strtoull(env, nullptr, 10);
  return cli_seed;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    out.push_back(std::stoi(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

struct NormArgs {
  std::string space = "jt2p";
  std::string p = "4";
  std::string tree_path, vec_path, params_path, cert_out;
  bool oracle = false;
};

int run_norm(const NormArgs& args) {
  Json jt = jtree::load_json_file(args.tree_path);
  Json jv = jtree::load_json_file(args.vec_path);
  jtree::TreePrefix tree = jtree::tree_from_json(jt);
  jtree::SparseVector x = jtree::vector_from_json(jv);

  Json out;
  out["space"] = args.space;
  if (args.space == "jt2p") {
    jtree::Rational p = jtree::parse_rational(args.p);
    out["p"] = jtree::rational_to_string(p);
    if (args.oracle) {
      out["value"] = jtree::json_number(jtree::jt2p_norm_bruteforce(x, tree, p));
      out["oracle"] = true;
    } else {
      jtree::NormResult r = jtree::jt2p_norm(x, tree, p);
      out["value"] = jtree::json_number(r.value);
      Json family = Json::array();
      for (const jtree::Segment& s : r.family) family.push_back(jtree::segment_to_json(s));
      out["family"] = std::move(family);
      if (!args.cert_out.empty())
        jtree::write_json_file(args.cert_out, jtree::certificate_to_json(r.functional));
    }
  } else if (args.space == "jtinf") {
    jtree::SpaceSpec spec = jtree::SpaceSpec::jt_inf();
    if (args.oracle) {
      out["value"] = jtree::json_number(jtree::generalized_norm_bruteforce(x, tree, spec));
      out["oracle"] = true;
    } else {
      jtree::GeneralizedNormResult r = jtree::generalized_norm(x, tree, spec);
      out["value"] = jtree::json_number(r.value);
      Json family = Json::array();
      for (const jtree::FamilyTerm& term : r.family) {
        family.push_back(Json{{"segment", jtree::segment_to_json(term.segment)},
                              {"value", jtree::json_number(term.value)}});
      }
      out["family"] = std::move(family);
    }
  } else if (args.space == "jtg") {
    if (args.params_path.empty()) jtree::fail(jtree::Errc::schema, "--space jtg needs --params");
    jtree::JTGParams params = jtree::params_from_json(jtree::load_json_file(args.params_path));
    jtree::JtgSpace space(tree, params);
    if (args.oracle) {
      out["value"] = jtree::json_number(jtree::jtg_norm_bruteforce(x, space));
      out["oracle"] = true;
    } else {
      jtree::GNormResult r = jtree::jtg_norm(x, space);
      out["value"] = jtree::json_number(r.value);
      out["sup_norm_attained"] = r.sup_norm_attained;
      Json family = Json::array();
      for (const jtree::GNormSegment& seg : r.per_segment) {
        Json lambda = Json::object();
        for (const auto& [k, lam] : seg.lambda)
          lambda[std::to_string(k)] = jtree::rational_to_string(lam);
        family.push_back(Json{{"segment", jtree::segment_to_json(seg.segment)},
                              {"value", jtree::json_number(seg.value)},
                              {"interval", jtree::segment_to_json(seg.interval)},
                              {"lambda", std::move(lambda)}});
      }
      out["family"] = std::move(family);
    }
  } else {
    jtree::fail(jtree::Errc::schema, "unknown space '" + args.space + "'");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact norm engine for James-Tree-type spaces"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "RNG seed (env JTREE_SEED overrides)");
  // Let --seed appear after the subcommand name as well.
  auto add_seed = [&seed](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed (env JTREE_SEED overrides)");
  };

  // ------------------------------------------------------------------- norm
  NormArgs norm_args;
  CLI::App* norm = app.add_subcommand("norm", "Compute a norm with certificate");
  norm->add_option("--space", norm_args.space, "jt2p|jtinf|jtg")->required();
  norm->add_option("--p", norm_args.p, "p for jt2p (rational, e.g. 4 or 5/2)");
  norm->add_option("--tree", norm_args.tree_path, "tree JSON file")->required();
  norm->add_option("--vec", norm_args.vec_path, "vector JSON file")->required();
  norm->add_option("--params", norm_args.params_path, "JT_G params JSON file");
  norm->add_option("--certificate", norm_args.cert_out, "write the dual certificate here");
  norm->add_flag("--oracle", norm_args.oracle, "use the exhaustive oracle instead of the DP");

  // ------------------------------------------------------------ certificate
  std::string cert_tree, cert_vec, cert_file;
  CLI::App* cert = app.add_subcommand("certificate", "Validate and evaluate a certificate");
  cert->add_option("--tree", cert_tree)->required();
  cert->add_option("--vec", cert_vec)->required();
  cert->add_option("--cert", cert_file)->required();

  // ---------------------------------------------------------------- profile
  std::string prof_space = "jt2p", prof_p = "4", prof_tree, prof_params;
  std::vector<std::string> prof_vecs;
  CLI::App* prof = app.add_subcommand("profile", "Per-branch profiles of vectors");
  prof->add_option("--space", prof_space, "jt2p|jtg");
  prof->add_option("--p", prof_p);
  prof->add_option("--tree", prof_tree)->required();
  prof->add_option("--params", prof_params);
  prof->add_option("--vec", prof_vecs, "vector JSON files")->required();
  add_seed(prof);

  // ------------------------------------------------------------------ equiv
  std::string eq_space = "jt2p", eq_p = "4", eq_tree, eq_params, eq_model = "ell2";
  std::vector<std::string> eq_vecs;
  CLI::App* equiv = app.add_subcommand("equiv", "Equivalence-constant bounds");
  equiv->add_option("--space", eq_space, "jt2p|jtg");
  equiv->add_option("--p", eq_p);
  equiv->add_option("--tree", eq_tree)->required();
  equiv->add_option("--params", eq_params);
  equiv->add_option("--model", eq_model, "ellp|ell2|c0");
  equiv->add_option("--vec", eq_vecs)->required();
  add_seed(equiv);

  // -------------------------------------------------------------------- gen
  CLI::App* gen = app.add_subcommand("gen", "Generators");
  gen->require_subcommand(1);

  int avg_order = 1, avg_index = 1;
  std::string avg_window;
  CLI::App* gen_avg = gen->add_subcommand("average", "Repeated average a_k(n, L)");
  gen_avg->add_option("--order", avg_order)->required();
  gen_avg->add_option("--window", avg_window, "comma-separated increasing window")->required();
  gen_avg->add_option("--index", avg_index);

  std::string nv_tree, nv_params;
  int nv_branch = 0, nv_k = 1;
  CLI::App* gen_nv = gen->add_subcommand("node-vector", "x_k^σ for a leaf branch");
  gen_nv->add_option("--tree", nv_tree)->required();
  gen_nv->add_option("--params", nv_params)->required();
  gen_nv->add_option("--branch", nv_branch, "leaf label identifying the branch")->required();
  gen_nv->add_option("--k", nv_k, "block index (1-based)");

  std::string gt_kind = "chain";
  int gt_nodes = 8, gt_start = 1;
  CLI::App* gen_tree = gen->add_subcommand("tree", "Tree prefixes");
  gen_tree->add_option("--kind", gt_kind, "chain|star|binary|random");
  gen_tree->add_option("--nodes", gt_nodes);
  gen_tree->add_option("--start", gt_start);
  add_seed(gen_tree);

  // ----------------------------------------------------------------- verify
  std::string verify_suite;
  CLI::App* verify = app.add_subcommand("verify", "Run module invariant suites");
  verify->add_option("--suite", verify_suite, "tree|schreier|jt2p|framework|jtg|analysis");
  add_seed(verify);

  CLI11_PARSE(app, argc, argv);
  const std::uint64_t rng_seed = effective_seed(seed);

  try {
    if (norm->parsed()) return run_norm(norm_args);

    if (cert->parsed()) {
      jtree::TreePrefix tree = jtree::tree_from_json(jtree::load_json_file(cert_tree));
      jtree::SparseVector x = jtree::vector_from_json(jtree::load_json_file(cert_vec));
      jtree::Jt2pCertificate certificate =
          jtree::certificate_from_json(jtree::load_json_file(cert_file));
      Json out;
      try {
        double value = jtree::eval_certificate(certificate, x, tree);
        out["valid"] = true;
        out["value"] = jtree::json_number(value);
      } catch (const jtree::Error& e) {
        if (e.code() != jtree::Errc::invalid_certificate) throw;
        out["valid"] = false;
        out["error"] = e.what();
        std::cout << out.dump(2) << "\n";
        return 1;
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (prof->parsed() || equiv->parsed()) {
      const bool is_prof = prof->parsed();
      const std::string& space_name = is_prof ? prof_space : eq_space;
      const std::string& tree_path = is_prof ? prof_tree : eq_tree;
      const std::string& params_path = is_prof ? prof_params : eq_params;
      const std::string& p_str = is_prof ? prof_p : eq_p;
      const auto& vec_paths = is_prof ? prof_vecs : eq_vecs;

      jtree::TreePrefix tree = jtree::tree_from_json(jtree::load_json_file(tree_path));
      std::optional<jtree::JtgSpace> jtg;
      jtree::SpaceHandle handle = jtree::SpaceHandle::make_jt2p(tree, 4);
      if (space_name == "jt2p") {
        handle = jtree::SpaceHandle::make_jt2p(tree, jtree::parse_rational(p_str));
      } else if (space_name == "jtg") {
        if (params_path.empty()) jtree::fail(jtree::Errc::schema, "--space jtg needs --params");
        jtg.emplace(tree, jtree::params_from_json(jtree::load_json_file(params_path)));
        handle = jtree::SpaceHandle::make_jtg(*jtg);
      } else {
        jtree::fail(jtree::Errc::schema, "unknown space '" + space_name + "'");
      }
      std::vector<jtree::SparseVector> xs;
      for (const std::string& path : vec_paths)
        xs.push_back(jtree::vector_from_json(jtree::load_json_file(path)));

      Json out;
      if (is_prof) {
        Json profiles = Json::array();
        for (const jtree::BranchProfile& bp : jtree::branch_profile(xs, handle)) {
          Json branches = Json::array();
          for (const auto& entry : bp.values) {
            Json nodes = Json::array();
            for (jtree::NodeId v : entry.branch.nodes) nodes.push_back(v);
            branches.push_back(Json{{"leaf", entry.branch.leaf()},
                                    {"branch", std::move(nodes)},
                                    {"value", jtree::json_number(entry.value)}});
          }
          profiles.push_back(
              Json{{"vector", bp.vector_index}, {"branches", std::move(branches)}});
        }
        out["profiles"] = std::move(profiles);
      } else {
        jtree::SequenceModel model = jtree::SequenceModel::ell_2;
        if (eq_model == "ellp")
          model = jtree::SequenceModel::ell_p;
        else if (eq_model == "ell2")
          model = jtree::SequenceModel::ell_2;
        else if (eq_model == "c0")
          model = jtree::SequenceModel::c0;
        else
          jtree::fail(jtree::Errc::schema, "unknown model '" + eq_model + "'");
        jtree::EquivalenceReport rep = jtree::equivalence_bounds(xs, handle, model, rng_seed);
        out["model"] = eq_model;
        out["lower"] = jtree::json_number(rep.lower);
        out["upper"] = jtree::json_number(rep.upper);
        Json lw = Json::array(), uw = Json::array();
        for (double a : rep.lower_witness) lw.push_back(jtree::json_number(a));
        for (double a : rep.upper_witness) uw.push_back(jtree::json_number(a));
        out["lower_witness"] = std::move(lw);
        out["upper_witness"] = std::move(uw);
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (gen_avg->parsed()) {
      jtree::RepeatedAverage avg =
          jtree::repeated_average(avg_order, parse_int_list(avg_window), avg_index);
      Json coeffs = Json::object();
      for (const auto& [node, w] : avg.coeffs)
        coeffs[std::to_string(node)] = jtree::rational_to_string(w);
      Json out{{"order", avg.order}, {"index", avg.index}, {"coefficients", std::move(coeffs)}};
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (gen_nv->parsed()) {
      jtree::TreePrefix tree = jtree::tree_from_json(jtree::load_json_file(nv_tree));
      jtree::JTGParams params = jtree::params_from_json(jtree::load_json_file(nv_params));
      jtree::JtgSpace space(tree, params);
      const jtree::BranchData& bd = space.branch_data(nv_branch);
      std::cout << jtree::vector_to_json(bd.node_vector(nv_k)).dump(2) << "\n";
      return 0;
    }

    if (gen_tree->parsed()) {
      jtree::TreePrefix t;
      if (gt_kind == "chain")
        t = jtree::make_chain(gt_nodes, gt_start);
      else if (gt_kind == "star")
        t = jtree::make_star(gt_nodes, gt_start);
      else if (gt_kind == "binary")
        t = jtree::make_binary(gt_nodes, gt_start);
      else if (gt_kind == "random")
        t = jtree::make_random_tree(gt_nodes, rng_seed, gt_start);
      else
        jtree::fail(jtree::Errc::schema, "unknown tree kind '" + gt_kind + "'");
      std::cout << jtree::tree_to_json(t).dump(2) << "\n";
      return 0;
    }

    if (verify->parsed()) {
      std::vector<jtree::SuiteResult> suites;
      if (verify_suite.empty())
        suites = jtree::run_all_verify_suites(rng_seed);
      else
        suites.push_back(jtree::run_verify_suite(verify_suite, rng_seed));
      int failures = 0;
      Json jsuites = Json::array();
      for (const jtree::SuiteResult& s : suites) {
        failures += s.failures();
        Json checks = Json::array();
        for (const jtree::CheckResult& check : s.checks)
          checks.push_back(
              Json{{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
        jsuites.push_back(Json{{"suite", s.suite},
                               {"failures", s.failures()},
                               {"checks", std::move(checks)}});
      }
      Json out{{"failures", failures}, {"suites", std::move(jsuites)}};
      std::cout << out.dump(2) << "\n";
      return failures == 0 ? 0 : 1;
    }
  } catch (const jtree::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == jtree::Errc::schema ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
