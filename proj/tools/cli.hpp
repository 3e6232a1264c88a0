#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tbhfk/pipeline.hpp"

namespace tbhfk::cli {

enum ExitCode { kOk = 0, kInvalidInput = 2, kCheckFailed = 3 };

struct RunRequest {
  std::optional<std::int64_t> p;
  std::optional<std::int64_t> q;
  std::vector<std::int64_t> crossings;
  std::string flavor = "filtered";  // graded | filtered | minus
  int truncate = 0;
  std::string format = "json";  // json | tsv | text
  bool validate = false;
  int batch = 0;
  std::string cache_dir;
  std::string out;
};

using nlohmann::json;

inline json entries_json(const std::vector<HfkEntry>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back({{"A", e.alexander}, {"M", e.maslov.str()}, {"rank", e.rank}});
  return a;
}

inline json to_json(const InvariantReport& r) {
  const auto& d = r.diagnostics;
  json flavors = json::array({"graded", "filtered"});
  if (d.minus_truncation > 0) flavors.push_back("minus");
  json diag = {{"version", kVersion},
               {"generators", d.generators},
               {"sectors", static_cast<int>(r.sectors.size())},
               {"vertices", d.vertices},
               {"faces", d.faces},
               {"edges", d.edges},
               {"parallelograms", d.parallelograms},
               {"tall_parallelograms", d.tall_parallelograms},
               {"alexander_shift", d.alexander_shift},
               {"calibration", {{"unit", d.calibration_unit}, {"ambiguous", d.calibration_ambiguous}}},
               {"maslov_table", d.maslov_table},
               {"flavors", flavors},
               {"oracle_checked", d.oracle_checked},
               {"checks", d.checks}};
  if (d.minus_truncation > 0) {
    diag["minus"] = {{"truncation", d.minus_truncation}, {"note", "U powers truncated; towers reported inside the stable window"}};
  }
  json sectors = json::array();
  for (const auto& s : r.sectors) {
    json js = {{"label", s.label},
               {"d", s.d.str()},
               {"tau", s.tau},
               {"hfk", entries_json(s.hfk)},
               {"hfk_knot", entries_json(s.hfk_knot)}};
    if (s.minus) {
      json ranks = json::array();
      for (const auto& [g, k] : s.minus->ranks) ranks.push_back({{"M", g.str()}, {"rank", k}});
      js["minus"] = {{"truncation", s.minus->truncation},
                     {"window_low", s.minus->window_low.str()},
                     {"tower_length", s.minus->tower_length},
                     {"ranks", ranks},
                     {"stable", s.minus->stable},
                     {"u_actions_agree", s.minus->u_actions_agree}};
    }
    sectors.push_back(js);
  }
  json terms = json::array();
  for (const auto& [e, c] : r.alexander_polynomial.coeff) terms.push_back({{"exponent", e}, {"coefficient", c}});
  return {{"params", {{"p", r.params.p()}, {"q", r.params.q()}}},
          {"diagnostics", diag},
          {"sectors", sectors},
          {"alexander_polynomial", {{"text", r.alexander_polynomial.str()}, {"terms", terms}}}};
}

inline std::string rank_vector(const std::vector<HfkEntry>& es) {
  std::string s;
  for (const auto& e : es) s += (s.empty() ? "" : ",") + std::to_string(e.rank);
  return s;
}

inline std::string to_tsv(const InvariantReport& r, bool header) {
  std::ostringstream os;
  if (header) os << "p\tq\tlabel\td\ttau\thfk_ranks\tknot_ranks\n";
  for (const auto& s : r.sectors) {
    os << r.params.p() << '\t' << r.params.q() << '\t' << s.label << '\t' << s.d << '\t' << s.tau << '\t'
       << rank_vector(s.hfk) << '\t' << rank_vector(s.hfk_knot) << '\n';
  }
  return os.str();
}

inline std::string to_text(const InvariantReport& r) {
  std::ostringstream os;
  os << "K(" << r.params.p() << "," << r.params.q() << ") in -L(" << r.params.p() << "," << r.params.q() << ")\n";
  os << "generators " << r.diagnostics.generators << ", parallelograms " << r.diagnostics.parallelograms << "\n";
  os << "Alexander polynomial: " << r.alexander_polynomial.str() << "\n";
  for (const auto& s : r.sectors) {
    os << "s" << s.label << ": d = " << s.d << ", tau = " << s.tau << "\n  HFK:";
    for (const auto& e : s.hfk) os << " (" << e.alexander << ", " << e.maslov << ")^" << e.rank;
    os << "\n  knot:";
    for (const auto& e : s.hfk_knot) os << " (" << e.alexander << ", " << e.maslov << ")^" << e.rank;
    os << "\n";
    if (s.minus) {
      os << "  minus (N = " << s.minus->truncation << "):";
      for (const auto& [g, k] : s.minus->ranks) os << " " << g << "^" << k;
      os << "\n";
    }
  }
  if (r.diagnostics.calibration_ambiguous) os << "note: Spin^c labelling of d values is ambiguous\n";
  return os.str();
}

// Batch summary: one row per knot class, sector columns joined by ';'.
inline std::string batch_tsv(const std::vector<InvariantReport>& rs) {
  std::ostringstream os;
  os << "p\tq\td\ttau\thfk_ranks\n";
  for (const auto& r : rs) {
    std::string d, tau, ranks;
    for (const auto& s : r.sectors) {
      const char* sep = d.empty() ? "" : ";";
      d += sep + s.d.str();
      tau += sep + std::to_string(s.tau);
      ranks += sep + rank_vector(s.hfk);
    }
    os << r.params.p() << '\t' << r.params.q() << '\t' << d << '\t' << tau << '\t' << ranks << '\n';
  }
  return os.str();
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string cache_key(const std::string& canonical) {
  std::ostringstream os;
  os << std::hex << fnv1a(canonical);
  return os.str();
}

inline std::optional<std::string> cache_read(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void cache_write(const std::filesystem::path& file, const std::string& body) {
  std::filesystem::create_directories(file.parent_path());
  std::random_device rd;
  auto tmp = file;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary);
    out << body;
  }
  std::filesystem::rename(tmp, file);
}

struct Outcome {
  int code = kOk;
  std::string output;
  std::string error;
  bool from_cache = false;
};

inline Options options_for(const RunRequest& req) {
  Options o;
  o.minus = req.flavor == "minus";
  o.truncation = req.truncate;
  o.validate = req.validate;
  return o;
}

inline std::string render(const InvariantReport& r, const RunRequest& req) {
  if (req.format == "tsv") return to_tsv(r, true);
  if (req.format == "text") return to_text(r);
  return to_json(r).dump(2) + "\n";
}

inline Outcome run(const RunRequest& req) {
  Outcome out;
  try {
    if (req.flavor != "graded" && req.flavor != "filtered" && req.flavor != "minus") {
      throw Error(ErrorCode::InvalidInput, "unknown flavor " + req.flavor);
    }
    if (req.format != "json" && req.format != "tsv" && req.format != "text") {
      throw Error(ErrorCode::InvalidInput, "unknown format " + req.format);
    }
    if (req.truncate < 0) throw Error(ErrorCode::InvalidInput, "truncation must be positive");
    const Options opt = options_for(req);

    if (req.batch > 0) {
      if (req.p || req.q || !req.crossings.empty()) throw Error(ErrorCode::InvalidInput, "--batch takes no knot input");
      if (req.batch < 3) throw Error(ErrorCode::InvalidInput, "--batch needs P_MAX >= 3");
      std::vector<InvariantReport> rs;
      for (const auto& params : class_representatives(req.batch)) rs.push_back(compute_all(params, opt));
      out.output = batch_tsv(rs);
      return out;
    }

    const bool by_pq = req.p.has_value() || req.q.has_value();
    if (by_pq == !req.crossings.empty()) throw Error(ErrorCode::InvalidInput, "give exactly one of --p/--q or --crossings");
    if (by_pq && !(req.p && req.q)) throw Error(ErrorCode::InvalidInput, "--p and --q go together");
    const TwoBridgeParams params = by_pq ? normalize_params(*req.p, *req.q) : params_from_crossings(req.crossings);

    std::string dir = req.cache_dir;
    if (dir.empty()) {
      if (const char* env = std::getenv("TBHFK_CACHE_DIR")) dir = env;
    }
    std::ostringstream canon;
    canon << "tbhfk " << kVersion << " p=" << params.p() << " q=" << params.q() << " flavors=graded,filtered"
          << (opt.minus ? ",minus" : "") << " truncation=" << (opt.minus ? (opt.truncation > 0 ? opt.truncation : 2 * params.p()) : 0)
          << " validate=" << opt.validate << " format=" << req.format;
    std::optional<std::filesystem::path> file;
    if (!dir.empty()) {
      file = std::filesystem::path(dir) / (cache_key(canon.str()) + "." + req.format);
      if (auto hit = cache_read(*file)) {
        out.output = *hit;
        out.from_cache = true;
        return out;
      }
    }
    out.output = render(compute_all(params, opt), req);
    if (file) cache_write(*file, out.output);
  } catch (const Error& e) {
    out.code = is_input_error(e.code()) ? kInvalidInput : kCheckFailed;
    out.error = e.what();
    out.output.clear();
  }
  return out;
}

inline void add_options(CLI::App& app, RunRequest& req) {
  app.add_option("--p", req.p, "odd p >= 3");
  app.add_option("--q", req.q, "q coprime to p");
  app.add_option("--crossings", req.crossings, "continued fraction word c1,c2,...")->delimiter(',');
  app.add_option("--flavor", req.flavor, "graded|filtered|minus");
  app.add_option("--truncate", req.truncate, "U truncation order for minus (default 2p)");
  app.add_option("--format", req.format, "json|tsv|text");
  app.add_flag("--validate", req.validate, "cross-check against the brute-force oracle (p <= 7)");
  app.add_option("--batch", req.batch, "tabulate all knot classes with p <= P_MAX");
  app.add_option("--cache", req.cache_dir, "cache directory (default $TBHFK_CACHE_DIR)");
  app.add_option("--out", req.out, "write output to FILE");
}

inline int main(int argc, char** argv) {
  CLI::App app{"Knot Floer homology of two-bridge knot lifts in lens spaces"};
  RunRequest req;
  add_options(app, req);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }
  const Outcome res = run(req);
  if (res.code != kOk) {
    std::cerr << res.error << "\n";
    return res.code;
  }
  if (req.out.empty()) {
    std::cout << res.output;
  } else {
    std::ofstream f(req.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot open " << req.out << "\n";
      return kInvalidInput;
    }
    f << res.output;
  }
  return kOk;
}

}  // namespace tbhfk::cli
