#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "torstab/torstab.h"

using Json = nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

struct Options {
  int d = 0;
  std::string format = "json";
  std::map<std::string, std::string> text;
  std::map<std::string, int> ints;
  std::map<std::string, bool> flags;
  std::vector<int> keep;
  std::string output;
};

// "@path" reads the value from a file
std::string expand(const std::string& v) {
  if (v.empty() || v[0] != '@') return v;
  std::ifstream in(v.substr(1));
  if (!in) throw CLI::ValidationError("cannot read " + v.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

int emit_error(const Json& err, const std::string& format) {
  std::string name = err.value("name", "Internal");
  int exit_code = name == "ParseError" ? kExitUsage : kExitDomain;
  if (format == "json")
    std::cout << Json{{"error", err}}.dump() << "\n";
  else
    std::cerr << "error: " << name << ": " << err.value("message", "") << "\n";
  return exit_code;
}

int run(const std::string& command, const Options& opt) {
  Json req{{"command", command}, {"d", opt.d}};
  for (const auto& [k, v] : opt.text) req[k] = expand(v);
  for (const auto& [k, v] : opt.ints) req[k] = v;
  for (const auto& [k, v] : opt.flags) req[k] = v;
  if (!opt.keep.empty()) req["keep"] = opt.keep;

  char* raw = nullptr;
  tst_status st = tst_run_json(req.dump().c_str(), &raw);
  Json reply = Json::parse(raw ? raw : "{}");
  tst_string_free(raw);
  if (st != TST_OK) return emit_error(reply.value("error", Json::object()), opt.format);

  if (command == "helix-svg" && opt.format == "text") {
    std::string svg = reply.at("svg").get<std::string>();
    if (opt.output.empty()) {
      std::cout << svg;
    } else {
      std::ofstream f(opt.output, std::ios::binary);
      if (!f) {
        std::cerr << "error: cannot write " << opt.output << "\n";
        return kExitUsage;
      }
      f << svg;
    }
    return 0;
  }
  if (opt.format == "json")
    std::cout << reply.dump() << "\n";
  else
    flatten(reply, "", std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability conditions on generic complex tori"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tst_version()));

  Options opt;

  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--d", opt.d, "dimension of the torus")->required()->check(CLI::Range(3, 64));
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    return sub;
  };
  auto text_opt = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                      const std::string& help) {
    return sub->add_option_function<std::string>(
        flag, [&opt, key](const std::string& v) { opt.text[key] = v; }, help);
  };
  auto int_opt = [&](CLI::App* sub, const std::string& flag, const std::string& key,
                     const std::string& help) {
    return sub->add_option_function<int>(
        flag, [&opt, key](const int& v) { opt.ints[key] = v; }, help);
  };
  auto point_opts = [&](CLI::App* sub) {
    auto* point = text_opt(sub, "--point", "point", "point JSON as printed by classify/act (or @file)");
    auto* p = int_opt(sub, "--p", "p", "orbit index");
    text_opt(sub, "--gamma", "gamma", "Deg parameter in (0, 1/2)")->needs(p);
    point->excludes(p);
  };

  auto* classify = add("classify", "orbit-normal form of (Z, phase of k(y), phase of Pic^0)");
  text_opt(classify, "--charge", "charge", "a,b,c,e")->required();
  text_opt(classify, "--phi", "phi", "phase of skyscraper sheaves")->required();
  text_opt(classify, "--psi", "psi", "phase of degree-zero line bundles")->required();

  auto* act = add("act", "apply a lifted matrix to a point");
  text_opt(act, "--point", "point", "point JSON (or @file)")->required();
  text_opt(act, "--by", "by", "{\"T\": [[..],[..]], \"winding\": n} (or @file)");

  auto* hn = add("hn", "Harder-Narasimhan factors of an object");
  point_opts(hn);
  text_opt(hn, "--object", "object", "object JSON (or @file)")->required();

  auto* tilt = add("tilt-chain", "compare iterated tilts with the heart description");
  int_opt(tilt, "--p", "p", "heart index")->required();
  text_opt(tilt, "--object", "object", "object JSON (or @file)");
  int_opt(tilt, "--mass", "mass", "corpus bound when no object is given");

  auto* spectrum = add("spectrum", "stable objects and phases of a point");
  point_opts(spectrum);
  int_opt(spectrum, "--ideals", "ideals", "number of ideal sheaves listed for Std(0)");

  auto* bounds = add("gamma-bounds", "nearest stable phases around gamma");
  int_opt(bounds, "--p", "p", "orbit index")->required();
  text_opt(bounds, "--gamma", "gamma", "phase in (0, 1)")->required();

  auto* boundary = add("boundary", "wall reached from Std(p) at gamma");
  int_opt(boundary, "--p", "p", "orbit index")->required();
  text_opt(boundary, "--gamma", "gamma", "phase in (0, 1)")->required();
  boundary->add_flag_function(
      "--heart", [&opt](std::int64_t) { opt.flags["heart"] = true; }, "include the boundary heart");

  auto* graph = add("orbit-graph", "adjacency of cells and walls");
  graph->add_option("--keep", opt.keep, "node indices to keep")->delimiter(',');

  auto* pi1 = add("pi1", "fundamental group by van Kampen");
  pi1->add_option("--keep", opt.keep, "node indices to keep")->delimiter(',');

  auto* fiber = add("fiber", "fibers of the charge map over a charge");
  text_opt(fiber, "--charge", "charge", "a,b,c,e");
  point_opts(fiber);

  auto* escape = add("twist-escape", "least n with phase(I + nE) above gamma^-");
  text_opt(escape, "--i", "i", "rk,chd")->required();
  text_opt(escape, "--e", "e", "rk,chd")->required();
  text_opt(escape, "--gamma-minus", "gamma_minus", "phase bound")->required();
  text_opt(escape, "--charge", "charge", "a,b,c,e (default 1,0,0,1)");

  auto* helix = add("helix-svg", "schematic of the orbit helix");
  helix->add_flag_function(
      "--no-labels", [&opt](std::int64_t) { opt.flags["no_labels"] = true; }, "omit text");
  helix->add_option("--output", opt.output, "write the SVG here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == helix && helix->get_option("--format")->count() == 0) opt.format = "text";
  try {
    return run(chosen->get_name(), opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
