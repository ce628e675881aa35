#include "coulomb/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using coulomb::cli::json;

enum ExitCode { kOk = 0, kFailure = 1, kBadRequest = 2, kMismatch = 3, kResourceCap = 4 };

std::string read_input(const std::string& path) {
  std::ostringstream os;
  if (path == "-") {
    os << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw coulomb::cli::RequestError("", "cannot open '" + path + "'");
    os << in.rdbuf();
  }
  return os.str();
}

json load_document(const std::string& path, const std::string& xi0, const std::vector<std::string>& analyses) {
  json doc;
  try {
    doc = json::parse(read_input(path));
  } catch (const json::parse_error& e) {
    throw coulomb::cli::RequestError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) return doc;
  if (!xi0.empty()) {
    json v = json::array();
    std::stringstream ss(xi0);
    for (std::string part; std::getline(ss, part, ',');) v.push_back(part);
    doc["options"]["xi0"] = v;
  }
  if (!analyses.empty()) doc["options"]["analyses"] = analyses;
  return doc;
}

void print(const json& j, bool compact) { std::cout << (compact ? j.dump() : j.dump(2)) << "\n"; }

bool counts_clean(const json& report) {
  const json& id = report["identities"];
  if (id.contains("skipped")) return true;
  return id["delta_chi_vs_c"] == 0 && id["delta_kappa_vs_cd"] == 0 &&
         id["vepchikappa"]["coboundary_discrepancies"] == 0 && id["regweyl_discrepancies"] == 0 &&
         id["c_plus_squared_matches"] == true;
}

bool cocycles_clean(const json& report) {
  const json& c = report["cocycles"];
  if (c.contains("skipped")) return true;
  return c["c"]["cocycle_ok"] == true && c["s2"]["crossed_hom_ok"] == true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Weyl-descent data for Coulomb branches"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string file, name, xi0;
  std::vector<std::string> analyses;
  bool compact = false;
  app.add_flag("--compact", compact, "print JSON on one line");

  auto add_request_options = [&](CLI::App* sub) {
    sub->add_option("file", file, "request JSON, or - for stdin")->required();
    sub->add_option("--xi0", xi0, "reference coweight in cover coordinates, comma separated (1/2 allowed)");
  };
  auto* analyze = app.add_subcommand("analyze", "run the requested analyses");
  add_request_options(analyze);
  analyze->add_option("--analyses", analyses, "subset of analyses to run");
  auto* cocycles = app.add_subcommand("cocycles", "cocycle verification and exactness");
  add_request_options(cocycles);
  auto* identities = app.add_subcommand("identities", "formal-section identity checks");
  add_request_options(identities);
  auto* validate = app.add_subcommand("validate", "parse a request and print its normalized form");
  add_request_options(validate);
  auto* example = app.add_subcommand("example", "run a worked example and compare its stored values");
  example->add_option("name", name, "example name")->required();
  auto* request = app.add_subcommand("request", "print the request documents of a worked example");
  request->add_option("name", name, "example name")->required();
  auto* list = app.add_subcommand("list-examples", "list the worked examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadRequest;
  }

  try {
    if (*list) {
      for (const auto& e : coulomb::cli::examples()) std::cout << e.name << "\t" << e.summary << "\n";
      return kOk;
    }
    if (*request) {
      const auto& ex = coulomb::cli::find_example(name);
      print(ex.requests.size() == 1 ? ex.requests[0] : json(ex.requests), compact);
      return kOk;
    }
    if (*example) {
      const json result = coulomb::cli::run_example(coulomb::cli::find_example(name));
      print(result, compact);
      return result["ok"] == true ? kOk : kMismatch;
    }
    if (*cocycles) analyses = {"cocycles"};
    if (*identities) analyses = {"identities"};
    const coulomb::cli::AnalysisRequest req = coulomb::cli::parse_request(load_document(file, xi0, analyses));
    if (*validate) {
      print(coulomb::cli::serialize(req), compact);
      return kOk;
    }
    const json report = coulomb::cli::run_analysis(req);
    print(report, compact);
    return counts_clean(report) && cocycles_clean(report) ? kOk : kMismatch;
  } catch (const coulomb::cli::RequestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadRequest;
  } catch (const coulomb::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
