#include "slpx/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slpx/access.hpp"
#include "slpx/container.hpp"
#include "slpx/verify.hpp"

namespace slpx::cli {

namespace {

using nlohmann::json;

json report_json(const SpaceReport& rep) {
  json j;
  j["scheme"] = scheme_name(rep.scheme);
  j["components"] = json::object();
  for (const auto& [k, v] : rep.components) j["components"][k] = v;
  j["core_bits"] = rep.core_bits;
  j["formula_bits"] = rep.formula_bits;
  j["formula_bound_bits"] = rep.formula_bound_bits;
  j["overhead_bits"] = rep.overhead_bits;
  return j;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "I" || s == "1") return Scheme::I;
  if (s == "II" || s == "2") return Scheme::II;
  if (s == "III" || s == "3") return Scheme::III;
  throw Error("unknown scheme '" + s + "' (expected I, II or III)");
}

int cmd_compress(const std::string& in_path, const std::string& out_path, std::ostream& out) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw Error("cannot open " + in_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const Slp g = compress(text);
  std::ofstream of(out_path);
  if (!of) throw Error("cannot open " + out_path + " for writing");
  of << format_slp_text(g);
  if (!of) throw Error("write failed: " + out_path);
  json j;
  j["n"] = g.n;
  j["N"] = text.size();
  out << j.dump() << '\n';
  return 0;
}

int cmd_encode(const std::string& scheme_str, const std::string& in_path,
               const std::string& out_path, std::ostream& out) {
  const Scheme scheme = parse_scheme(scheme_str);
  const Slp g = parse_slp_file(in_path);
  const AnyEncoding enc = build_encoding(g, scheme);
  save_container(out_path, enc);
  out << report_json(space_report_of(enc)).dump() << '\n';
  return 0;
}

int cmd_extract(const std::string& in_path, uint64_t pos, uint64_t len, bool stats,
                std::ostream& out, std::ostream& err) {
  const AnyEncoding enc = load_container(in_path);
  const uint64_t N = common_of(enc).N;
  if (len < 1 || pos < 1 || pos > N || len > N - pos + 1) {
    throw Error("range [" + std::to_string(pos) + ".." + std::to_string(pos + len - 1) +
                "] outside [1.." + std::to_string(N) + "]");
  }
  const auto [text, st] = extract_any(enc, pos, pos + len - 1);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (stats) {
    json j;
    j["non_sc_hops"] = st.non_sc_hops;
    j["trie_nodes"] = st.trie_nodes;
    j["expanded_symbols"] = st.expanded_symbols;
    j["stack_max"] = st.stack_max;
    err << j.dump() << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& in_path, const std::string& against, uint64_t samples,
               bool full, std::ostream& out) {
  const AnyEncoding enc = load_container(in_path);
  const Slp g = parse_slp_file(against);
  VerifyOptions opt;
  opt.samples = samples;
  opt.full = full;
  const VerifyResult res = verify_encoding(enc, g, opt);
  if (res.ok) {
    out << "ok: " << res.extractions << " extractions, " << res.accesses
        << " accesses verified\n";
    return 0;
  }
  for (const auto& p : res.problems) out << "mismatch: " << p << '\n';
  return 1;
}

int cmd_stats(const std::string& in_path, const std::string& against, std::ostream& out) {
  const AnyEncoding enc = load_container(in_path);
  const auto& c = common_of(enc);
  json j = report_json(space_report_of(enc));
  j["N"] = c.N;
  j["n"] = c.n;
  j["n_prime"] = c.n_prime;
  j["sigma"] = c.sigma;
  j["start"] = c.start;
  if (!against.empty()) j["height"] = height(parse_slp_file(against));
  out << j.dump() << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grammar-compressed random access: SLP encodings with "
               "logarithmic substring extraction"};
  app.require_subcommand(1);

  std::string in_path, out_path, scheme = "I", against;
  uint64_t pos = 1, len = 1, samples = 1000;
  bool stats = false, full = false;

  auto* c_compress = app.add_subcommand("compress", "build an SLP from a text file");
  c_compress->add_option("input", in_path, "input text file")->required();
  c_compress->add_option("output", out_path, "output .slp file")->required();

  auto* c_encode = app.add_subcommand("encode", "pack an SLP into a queryable container");
  c_encode->add_option("--scheme", scheme, "encoding scheme: I, II or III")->required();
  c_encode->add_option("input", in_path, "input .slp file")->required();
  c_encode->add_option("output", out_path, "output .slpx container")->required();

  auto* c_extract = app.add_subcommand("extract", "print a substring of the encoded text");
  c_extract->add_option("input", in_path, "input .slpx container")->required();
  c_extract->add_option("--pos", pos, "start position, 1-based")->required();
  c_extract->add_option("--len", len, "number of characters")->required();
  c_extract->add_flag("--stats", stats, "print query counters to stderr");

  auto* c_verify = app.add_subcommand("verify", "check a container against its source SLP");
  c_verify->add_option("input", in_path, "input .slpx container")->required();
  c_verify->add_option("--against", against, "reference .slp file")->required();
  auto* opt_samples = c_verify->add_option("--samples", samples, "random queries to run");
  auto* opt_full = c_verify->add_flag("--full", full, "verify every position");
  opt_samples->excludes(opt_full);

  auto* c_stats = app.add_subcommand("stats", "print container size accounting as JSON");
  c_stats->add_option("input", in_path, "input .slpx container")->required();
  c_stats->add_option("--against", against, "original .slp (adds grammar height)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (c_compress->parsed()) return cmd_compress(in_path, out_path, out);
    if (c_encode->parsed()) return cmd_encode(scheme, in_path, out_path, out);
    if (c_extract->parsed()) return cmd_extract(in_path, pos, len, stats, out, err);
    if (c_verify->parsed()) return cmd_verify(in_path, against, samples, full, out);
    if (c_stats->parsed()) return cmd_stats(in_path, against, out);
  } catch (const NoMonotoneOrder& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace slpx::cli
