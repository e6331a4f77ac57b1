// Command line front end.  Everything goes through the C API; the only
// work done here is argument handling and report envelopes.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ultra.h"

using nlohmann::json;

namespace {

struct Exit {
  int code;
};

std::string code_name(ultra_status st) {
  switch (st) {
    case ULTRA_ERR_PARSE: return "parse";
    case ULTRA_ERR_ARG: return "argument";
    case ULTRA_ERR_LIMIT: return "limit";
    default: return "internal";
  }
}

void print_envelope(const json& env) { std::cout << env.dump(2) << "\n"; }

// Prints the report envelope for a finished call and converts the status
// to the documented exit code: 0 ok, 1 failed validation, 2 everything
// else.  Frees the payload.
int emit(const std::string& command, ultra_status st, char* payload) {
  json env{{"format", 1}, {"command", command}};
  int code = 2;
  if (st == ULTRA_OK) {
    env["status"] = "ok";
    env["payload"] = payload ? json::parse(payload) : json(nullptr);
    code = 0;
  } else if (st == ULTRA_INVALID) {
    env["status"] = "invalid";
    json p = payload ? json::parse(payload) : json::object();
    env["witnesses"] = p.contains("violations") ? p["violations"] : json::array();
    env["payload"] = std::move(p);
    code = 1;
  } else {
    env["status"] = "error";
    env["error"] = json{{"code", code_name(st)}, {"message", ultra_last_error()}};
  }
  ultra_free_str(payload);
  print_envelope(env);
  return code;
}

int emit_io_error(const std::string& command, const std::string& message) {
  print_envelope(json{{"format", 1},
                      {"command", command},
                      {"status", "error"},
                      {"error", json{{"code", "io"}, {"message", message}}}});
  return 2;
}

std::string read_file(const std::string& path, const std::string& command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{emit_io_error(command, "cannot read '" + path + "'")};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Opens a validated space or terminates with the printed report.
ultra_space* open_space(const std::string& path, int metric, const std::string& command) {
  const std::string text = read_file(path, command);
  ultra_space* h = nullptr;
  char* invalid = nullptr;
  const ultra_status st = ultra_space_open(text.c_str(), metric, &h, &invalid);
  if (st != ULTRA_OK) throw Exit{emit(command, st, invalid)};
  ultra_free_str(invalid);
  return h;
}

int run_gen(const std::string& command, ultra_status st, char* payload, const std::string& out_path) {
  if (st == ULTRA_OK && !out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      ultra_free_str(payload);
      return emit_io_error(command, "cannot write '" + out_path + "'");
    }
    out << payload << "\n";
  }
  return emit(command, st, payload);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto b = token.find_first_not_of(" \t");
    const auto e = token.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : token.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite ultrametric spaces: validation, balls, descent, fixed points"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ultra_version()));

  // check
  auto* check = app.add_subcommand("check", "validate a space file");
  std::string check_file;
  bool check_metric = false;
  check->add_option("file", check_file, "space JSON")->required();
  check->add_flag("--metric", check_metric, "check the ordinary triangle inequality instead");

  // balls compare
  auto* balls = app.add_subcommand("balls", "closed-ball operations");
  balls->require_subcommand(1);
  auto* bcompare = balls->add_subcommand("compare", "classify the relation of two balls");
  std::string bc_file, bc_c1, bc_r1, bc_c2, bc_r2;
  bcompare->add_option("file", bc_file, "space JSON")->required();
  bcompare->add_option("c1", bc_c1, "first center label")->required();
  bcompare->add_option("r1", bc_r1, "first radius")->required();
  bcompare->add_option("c2", bc_c2, "second center label")->required();
  bcompare->add_option("r2", bc_r2, "second radius")->required();

  // chain
  auto* chain = app.add_subcommand("chain", "intersect a descending ball chain");
  std::string chain_space, chain_file;
  chain->add_option("space", chain_space, "space JSON")->required();
  chain->add_option("chain", chain_file, "chain JSON")->required();

  // maximal
  auto* maximal = app.add_subcommand("maximal", "weight descent to a maximal element");
  std::string maximal_file;
  long maximal_start = 0;
  bool maximal_recheck = false;
  maximal->add_option("file", maximal_file, "order JSON")->required();
  maximal->add_option("--start", maximal_start, "start element index")->required();
  maximal->add_flag("--recheck", maximal_recheck, "re-derive the report definitionally");

  // evp
  auto* evp = app.add_subcommand("evp", "variational point above a start");
  std::string evp_file, evp_start;
  bool evp_metric = false, evp_recheck = false;
  evp->add_option("file", evp_file, "weighted space JSON")->required();
  evp->add_option("--start", evp_start, "start point label (default: first point)");
  evp->add_flag("--metric", evp_metric, "treat the space as plain metric");
  evp->add_flag("--recheck", evp_recheck, "re-evaluate the inequalities independently");

  // evp-verify
  auto* evpv = app.add_subcommand("evp-verify", "check the variational inequalities for a pair");
  std::string evpv_file, evpv_u, evpv_v;
  bool evpv_metric = false;
  evpv->add_option("file", evpv_file, "weighted space JSON")->required();
  evpv->add_option("--u", evpv_u, "start point label")->required();
  evpv->add_option("--v", evpv_v, "candidate point label")->required();
  evpv->add_flag("--metric", evpv_metric, "treat the space as plain metric");

  // fixpoint
  auto* fix = app.add_subcommand("fixpoint", "fixed point of a strictly nonexpansive map");
  std::string fix_space, fix_map, fix_start;
  bool fix_recheck = false;
  fix->add_option("space", fix_space, "space JSON")->required();
  fix->add_option("map", fix_map, "map JSON")->required();
  fix->add_option("--start", fix_start, "start point label (default: first point)");
  fix->add_flag("--recheck", fix_recheck, "re-validate the descent certificate");

  // banach
  auto* banach = app.add_subcommand("banach", "fixed point of an exact contraction");
  std::string banach_space, banach_map, banach_alpha, banach_start;
  bool banach_metric = false, banach_recheck = false;
  banach->add_option("space", banach_space, "space JSON")->required();
  banach->add_option("map", banach_map, "map JSON")->required();
  banach->add_option("--alpha", banach_alpha, "contraction factor in [0, 1)")->required();
  banach->add_option("--start", banach_start, "start point label (default: first point)");
  banach->add_flag("--metric", banach_metric, "treat the space as plain metric");
  banach->add_flag("--recheck", banach_recheck, "re-validate certificate and fixed point");

  // hensel
  auto* hensel = app.add_subcommand("hensel", "p-adic polynomial fixed points");
  std::string hensel_file, hensel_poly, hensel_x0, hensel_mode = "newton";
  long hensel_p = 0;
  int hensel_precision = 0;
  bool hensel_recheck = false;
  hensel->add_option("file", hensel_file, "polynomial JSON (alternative to the flags)");
  hensel->add_option("--p", hensel_p, "prime");
  hensel->add_option("--precision", hensel_precision, "number of p-adic digits");
  hensel->add_option("--poly", hensel_poly, "coefficients c0,c1,... (constant first)");
  hensel->add_option("--x0", hensel_x0, "seed residue");
  hensel->add_option("--mode", hensel_mode, "newton (default) or affine")
      ->check(CLI::IsMember({"newton", "affine"}));
  hensel->add_flag("--recheck", hensel_recheck, "re-validate the certificate and scan the carrier");

  // gen
  auto* gen = app.add_subcommand("gen", "generate space files");
  gen->require_subcommand(1);
  std::string gen_out;
  auto* grandom = gen->add_subcommand("random", "seeded random ultrametric space");
  long gr_n = 0;
  std::uint64_t gr_seed = 0;
  grandom->add_option("--n", gr_n, "number of points")->required();
  grandom->add_option("--seed", gr_seed, "64-bit seed")->required();
  grandom->add_option("-o,--out", gen_out, "also write the bare space file here");
  auto* gdiscrete = gen->add_subcommand("discrete", "all distances 1");
  long gd_n = 0;
  gdiscrete->add_option("--n", gd_n, "number of points")->required();
  gdiscrete->add_option("-o,--out", gen_out, "also write the bare space file here");
  auto* gpadic = gen->add_subcommand("padic", "truncated p-adic carrier");
  long gp_p = 0, gp_max = 2048;
  int gp_precision = 0;
  gpadic->add_option("--p", gp_p, "prime")->required();
  gpadic->add_option("--precision", gp_precision, "number of p-adic digits")->required();
  gpadic->add_option("--max-points", gp_max, "refuse carriers larger than this (default 2048)");
  gpadic->add_option("-o,--out", gen_out, "also write the bare space file here");
  auto* gdendro = gen->add_subcommand("dendrogram", "cophenetic space of a merge tree");
  std::string gden_file;
  gdendro->add_option("file", gden_file, "dendrogram JSON")->required();
  gdendro->add_option("-o,--out", gen_out, "also write the bare space file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*check) {
      const std::string text = read_file(check_file, "check");
      char* out = nullptr;
      const ultra_status st = ultra_space_check(text.c_str(), check_metric ? 1 : 0, &out);
      return emit("check", st, out);
    }
    if (*bcompare) {
      ultra_space* s = open_space(bc_file, 0, "balls compare");
      char* out = nullptr;
      const ultra_status st =
          ultra_ball_compare(s, bc_c1.c_str(), bc_r1.c_str(), bc_c2.c_str(), bc_r2.c_str(), &out);
      ultra_space_close(s);
      return emit("balls compare", st, out);
    }
    if (*chain) {
      ultra_space* s = open_space(chain_space, 0, "chain");
      const std::string text = read_file(chain_file, "chain");
      char* out = nullptr;
      const ultra_status st = ultra_chain_intersect(s, text.c_str(), &out);
      ultra_space_close(s);
      return emit("chain", st, out);
    }
    if (*maximal) {
      const std::string text = read_file(maximal_file, "maximal");
      ultra_order* o = nullptr;
      char* invalid = nullptr;
      ultra_status st = ultra_order_open(text.c_str(), &o, &invalid);
      if (st != ULTRA_OK) return emit("maximal", st, invalid);
      ultra_free_str(invalid);
      char* out = nullptr;
      st = ultra_order_maximal(o, maximal_start, maximal_recheck ? 1 : 0, &out);
      ultra_order_close(o);
      return emit("maximal", st, out);
    }
    if (*evp) {
      const std::string text = read_file(evp_file, "evp");
      char* out = nullptr;
      const ultra_status st =
          ultra_evp_point(text.c_str(), evp_start.empty() ? nullptr : evp_start.c_str(),
                          evp_metric ? 1 : 0, evp_recheck ? 1 : 0, &out);
      return emit("evp", st, out);
    }
    if (*evpv) {
      const std::string text = read_file(evpv_file, "evp-verify");
      char* out = nullptr;
      const ultra_status st = ultra_evp_verify(text.c_str(), evpv_u.c_str(), evpv_v.c_str(),
                                               evpv_metric ? 1 : 0, &out);
      return emit("evp-verify", st, out);
    }
    if (*fix) {
      ultra_space* s = open_space(fix_space, 0, "fixpoint");
      const std::string map = read_file(fix_map, "fixpoint");
      char* out = nullptr;
      const ultra_status st = ultra_fixpoint(s, map.c_str(), fix_start.empty() ? nullptr : fix_start.c_str(),
                                             fix_recheck ? 1 : 0, &out);
      ultra_space_close(s);
      return emit("fixpoint", st, out);
    }
    if (*banach) {
      ultra_space* s = open_space(banach_space, banach_metric ? 1 : 0, "banach");
      const std::string map = read_file(banach_map, "banach");
      char* out = nullptr;
      const ultra_status st =
          ultra_banach(s, map.c_str(), banach_alpha.c_str(),
                       banach_start.empty() ? nullptr : banach_start.c_str(), banach_recheck ? 1 : 0, &out);
      ultra_space_close(s);
      return emit("banach", st, out);
    }
    if (*hensel) {
      std::string text;
      if (!hensel_file.empty()) {
        text = read_file(hensel_file, "hensel");
      } else {
        if (hensel_p == 0 || hensel_precision == 0 || hensel_poly.empty() || hensel_x0.empty()) {
          std::cerr << "hensel needs either a polynomial file or --p --precision --poly --x0\n";
          return 2;
        }
        json spec{{"p", hensel_p},
                  {"precision", hensel_precision},
                  {"poly", split_commas(hensel_poly)},
                  {"x0", hensel_x0},
                  {"mode", hensel_mode}};
        text = spec.dump();
      }
      char* out = nullptr;
      const ultra_status st = ultra_hensel(text.c_str(), hensel_recheck ? 1 : 0, &out);
      return emit("hensel", st, out);
    }
    if (*grandom) {
      char* out = nullptr;
      const ultra_status st = ultra_gen_random(gr_n, gr_seed, &out);
      return run_gen("gen random", st, out, gen_out);
    }
    if (*gdiscrete) {
      char* out = nullptr;
      const ultra_status st = ultra_gen_discrete(gd_n, &out);
      return run_gen("gen discrete", st, out, gen_out);
    }
    if (*gpadic) {
      char* out = nullptr;
      const ultra_status st = ultra_gen_padic(gp_p, gp_precision, gp_max, &out);
      return run_gen("gen padic", st, out, gen_out);
    }
    if (*gdendro) {
      const std::string text = read_file(gden_file, "gen dendrogram");
      char* out = nullptr;
      const ultra_status st = ultra_gen_dendrogram(text.c_str(), &out);
      return run_gen("gen dendrogram", st, out, gen_out);
    }
  } catch (const Exit& e) {
    return e.code;
  }
  return 2;
}
