#include "kgmm/cli/cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "kgmm/maturity/maturity.hpp"
#include "kgmm/measures/catalog.hpp"
#include "kgmm/rdf/ntriples.hpp"
#include "kgmm/service/engine.hpp"
#include "kgmm/service/service.hpp"
#include "kgmm/service/store.hpp"

namespace kgmm::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

service::EngineConfig engine_config(const std::string& path) {
  service::EngineConfig cfg = path.empty() ? service::EngineConfig{} : service::load_engine_config(path);
  service::apply_environment(cfg.service);
  return cfg;
}

std::string data_dir_or_default(const std::string& flag, const service::EngineConfig& cfg) {
  return flag.empty() ? cfg.service.data_dir : flag;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_catalog(const std::string& format, std::ostream& out) {
  using namespace measures;
  if (format == "json") {
    out << service::catalog_json().dump(2) << "\n";
    return;
  }
  if (format == "markdown") {
    out << "| Measure | Dimension | Level | Priority | Modes |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& d : catalog()) {
      out << "| " << to_string(d.id) << " | " << to_string(d.dimension) << " | " << d.level << " | "
          << stars(d.priority) << " | " << mode_tag(d.modes) << " |\n";
    }
    return;
  }
  for (int level = 1; level <= 5; ++level) {
    if (level > 1) out << "\n";
    out << "Level " << level << ": " << level_name(level) << "\n";
    for (const auto& d : catalog()) {
      if (d.level != level) continue;
      std::string name(to_string(d.id));
      out << "  " << name << std::string(name.size() < 24 ? 24 - name.size() : 1, ' ')
          << to_string(d.dimension) << ", " << to_string(d.priority) << " " << stars(d.priority)
          << " " << mode_tag(d.modes) << "\n";
    }
  }
}

struct AssessFlags {
  std::string graph;
  std::string config;
  std::string format = "text";
  int min_level = 0;
  std::string data_dir;
  std::string target;
  std::string endpoint;
  std::optional<std::uint64_t> seed;
  bool offline = false;
  std::string http_fixture;
};

int cmd_assess(const AssessFlags& f, std::ostream& out, std::ostream& err, const Overrides& ov) {
  service::EngineConfig cfg;
  try {
    cfg = engine_config(f.config);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  if (!f.endpoint.empty()) cfg.assessment.sparql_endpoint = f.endpoint;
  if (f.seed) cfg.assessment.rng_seed = *f.seed;
  if (f.offline) cfg.assessment.offline = true;

  std::unique_ptr<probes::Transport> transport;
  try {
    if (!cfg.assessment.offline) {
      if (!f.http_fixture.empty()) {
        transport = probes::ScriptedTransport::from_json_text(read_file(f.http_fixture));
      } else if (ov.transport) {
        transport = ov.transport();
      } else {
        transport = std::make_unique<probes::HttpTransport>();
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  std::string target = f.target.empty() ? std::filesystem::path(f.graph).stem().string() : f.target;
  std::vector<review::Review> reviews;
  review::ReviewPolicy policy;
  try {
    if (!f.data_dir.empty()) {
      service::Store store(f.data_dir);
      reviews = store.reviews().reviews_for(target);
      auto t = store.target(target);
      policy = store.policy(t ? t->field : "default");
    }
    rdf::Graph g = service::load_graph(f.graph, transport.get());
    service::AssessmentOutcome outcome = service::assess(g, cfg, target, reviews, policy, transport.get());
    if (f.format == "json") {
      out << service::report_document(outcome.report);
    } else if (f.format == "badge") {
      out << maturity::badge(outcome.report);
    } else {
      out << maturity::to_text(outcome.report);
    }
    return outcome.report.achieved_level < f.min_level ? kBelowMinLevel : kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

int serve(service::Service& svc, const std::string& host, int port, std::ostream& out) {
  // Block the stop signals before any server thread exists so only the
  // waiter below receives them.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  service::RestServer server(svc);
  int bound = server.bind(host, port);
  out << "listening on http://" << host << ":" << bound << "\n" << bound << std::endl;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    server.stop();
  });
  server.listen();
  waiter.join();
  svc.wait_idle();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Overrides& overrides) {
  CLI::App app{"Knowledge graph maturity assessment", "kgmm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kgmm 0.3.0");

  AssessFlags af;
  auto* assess = app.add_subcommand("assess", "Assess a graph file and print its maturity report");
  assess->add_option("graph", af.graph, "Graph file (.nt or .ttl) or http(s) URL")->required();
  assess->add_option("--config", af.config, "Configuration document (JSON)");
  assess->add_option("--format", af.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "badge"}));
  assess->add_option("--min-level", af.min_level, "Exit with 1 when the achieved level is lower")
      ->check(CLI::Range(0, 5));
  assess->add_option("--data-dir", af.data_dir, "Data directory holding reviews and policies");
  assess->add_option("--target", af.target, "Target id for reviews (default: file stem)");
  assess->add_option("--endpoint", af.endpoint, "SPARQL endpoint URL");
  assess->add_option("--seed", af.seed, "Seed for the dereferencing sample");
  assess->add_flag("--offline", af.offline, "Skip all network probes");
  assess->add_option("--http-fixture", af.http_fixture, "Answer probes from a scripted JSON file");

  std::string catalog_format = "text";
  auto* cat = app.add_subcommand("catalog", "Print the measure catalog");
  cat->add_option("--format", catalog_format, "Output format")
      ->check(CLI::IsMember({"text", "json", "markdown"}));

  std::string config_path, data_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Configuration document (JSON)");
    sub->add_option("--data-dir", data_dir, "Data directory");
  };

  auto* review_cmd = app.add_subcommand("review", "Manage reviews");
  review_cmd->require_subcommand(1);
  auto* submit = review_cmd->add_subcommand("submit", "Submit a review");
  add_common(submit);
  std::string r_target, r_answers, r_token, r_links;
  submit->add_option("--target", r_target)->required();
  submit->add_option("--answers", r_answers, "q1=yes,q2=no")->required();
  submit->add_option("--token", r_token)->required();
  submit->add_option("--links", r_links, "Comma-separated suggested external IRIs");

  auto* policy_cmd = app.add_subcommand("policy", "Manage review policies");
  policy_cmd->require_subcommand(1);
  std::string p_field;
  int p_min = 0;
  std::optional<double> p_threshold;
  auto* pset = policy_cmd->add_subcommand("set", "Set the review quorum of a field");
  add_common(pset);
  pset->add_option("--field", p_field)->required();
  pset->add_option("--min-reviews", p_min)->required();
  pset->add_option("--agreement-threshold", p_threshold);
  auto* pget = policy_cmd->add_subcommand("get", "Show the policy of a field");
  add_common(pget);
  pget->add_option("--field", p_field)->required();

  auto* account_cmd = app.add_subcommand("account", "Manage accounts");
  account_cmd->require_subcommand(1);
  std::string a_id, a_name, a_role = "reviewer";
  auto* aadd = account_cmd->add_subcommand("add", "Register an account and print its token");
  add_common(aadd);
  aadd->add_option("--id", a_id)->required();
  aadd->add_option("--name", a_name);
  aadd->add_option("--role", a_role)->check(CLI::IsMember({"author", "reviewer", "admin"}));

  auto* target_cmd = app.add_subcommand("target", "Manage assessment targets");
  target_cmd->require_subcommand(1);
  std::string t_id, t_title, t_field = "default", t_source, t_token;
  auto* tadd = target_cmd->add_subcommand("add", "Register a target");
  add_common(tadd);
  tadd->add_option("--id", t_id);
  tadd->add_option("--title", t_title);
  tadd->add_option("--field", t_field);
  tadd->add_option("--source", t_source)->required();
  tadd->add_option("--token", t_token)->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the REST service");
  add_common(serve_cmd);
  std::string s_host;
  std::optional<int> s_port;
  std::string s_fixture;
  bool s_offline = false;
  serve_cmd->add_option("--host", s_host);
  serve_cmd->add_option("--port", s_port);
  serve_cmd->add_option("--http-fixture", s_fixture, "Answer probes from a scripted JSON file");
  serve_cmd->add_flag("--offline", s_offline);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << "kgmm 0.3.0\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }

  if (assess->parsed()) return cmd_assess(af, out, err, overrides);
  if (cat->parsed()) {
    print_catalog(catalog_format, out);
    return kOk;
  }

  try {
    service::EngineConfig cfg = engine_config(config_path);
    std::string dir = data_dir_or_default(data_dir, cfg);

    if (submit->parsed()) {
      service::Store store(dir);
      auto account = store.account_by_token(r_token);
      if (!account) {
        err << "error: invalid token\n";
        return kError;
      }
      service::Service svc(store, cfg);
      json body = {{"answers", review::parse_answers(r_answers)}, {"suggested_links", split_list(r_links)}};
      out << svc.submit_review(*account, r_target, body) << "\n";
      return kOk;
    }
    if (pset->parsed()) {
      service::Store store(dir);
      review::ReviewPolicy p = store.policy(p_field);
      p.min_reviews = p_min;
      if (p_threshold) p.agreement_threshold = *p_threshold;
      out << review::to_json(store.set_policy(p)).dump() << "\n";
      return kOk;
    }
    if (pget->parsed()) {
      service::Store store(dir);
      out << review::to_json(store.policy(p_field)).dump() << "\n";
      return kOk;
    }
    if (aadd->parsed()) {
      service::Store store(dir);
      auto role = service::role_from_string(a_role);
      out << store.add_account(a_id, a_name.empty() ? a_id : a_name, *role) << "\n";
      return kOk;
    }
    if (tadd->parsed()) {
      service::Store store(dir);
      auto account = store.account_by_token(t_token);
      if (!account) {
        err << "error: invalid token\n";
        return kError;
      }
      service::Service svc(store, cfg);
      json body = {{"title", t_title}, {"field", t_field}, {"source", t_source}};
      if (!t_id.empty()) body["id"] = t_id;
      out << svc.create_target(*account, body).id << "\n";
      return kOk;
    }
    if (serve_cmd->parsed()) {
      if (!s_host.empty()) cfg.service.host = s_host;
      if (s_port) cfg.service.port = *s_port;
      if (s_offline) cfg.assessment.offline = true;
      service::Store store(dir);
      if (!cfg.service.token_file.empty()) service::load_token_file(store, cfg.service.token_file);
      service::TransportFactory factory;
      if (!s_fixture.empty()) {
        std::string script = read_file(s_fixture);
        factory = [script] { return probes::ScriptedTransport::from_json_text(script); };
      } else if (overrides.transport) {
        factory = overrides.transport;
      } else {
        factory = [] { return std::make_unique<probes::HttpTransport>(); };
      }
      service::Service svc(store, cfg, factory);
      return serve(svc, cfg.service.host, cfg.service.port, out);
    }
  } catch (const service::ApiError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace kgmm::cli
