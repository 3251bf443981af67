// xmlstream command-line front end.
//
// Exit codes: 0 success or valid, 1 invalid document / mismatch, 2 usage or format error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "xmlstream/xmlstream.hpp"

namespace fs = std::filesystem;
using namespace xmlstream;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input;
  std::string output;
  std::string stats = "none";
  bool enforce = false;
  std::optional<std::size_t> max_passes;
  std::optional<std::size_t> max_cells;

  Budget budget() const { return Budget{max_passes, max_cells, enforce}; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text << '\n';
}

Doc read_doc(const std::string& path) { return parse_tokens(read_file(path)); }

void emit_doc(const Common& c, const Doc& doc) {
  if (c.output.empty()) {
    std::cout << render(doc) << '\n';
  } else {
    write_file(c.output, render(doc));
  }
}

void emit_stats(const Common& c, const RunStats& s) {
  if (c.stats == "text") std::cout << s.to_record();
}

bool has_variants(const Doc& doc) {
  return std::any_of(doc.tokens.begin(), doc.tokens.end(), [](const Tag& t) { return t.variant != Variant::None; });
}

Doc tape_doc(const Machine& m, TapeId id) { return Doc{m.contents(id)}; }

// ---- verbs ----

int run_wf(const Common& c) {
  Doc doc = read_doc(c.input);
  auto wf = check_well_formed(doc);
  if (wf) {
    std::cout << "well-formed " << doc.node_count() << " nodes\n";
    return kOk;
  }
  std::cout << "not well-formed at token " << wf.first_bad << ": " << wf.reason << '\n';
  return kInvalid;
}

int run_validate(const Common& c, const std::string& dtd_path, const std::string& algo) {
  Schema schema(parse_dtd(read_file(dtd_path)));
  Doc doc = read_doc(c.input);
  if (algo == "oracle") {
    Verdict v = validate_oracle(build_tree(doc), schema);
    std::cout << v.to_string() << " (oracle, unmetered)\n";
    return v.valid ? kOk : kInvalid;
  }
  Machine m(c.budget());
  TapeId in = m.load_input(std::move(doc.tokens));
  ValidationReport r;
  if (algo == "onepass-bin") {
    r = validate_onepass(m, in, schema);
  } else if (algo == "twopass-bin") {
    r = validate_twopass(m, in, schema);
  } else if (algo == "onepass-bot") {
    r = validate_fcns_onepass(m, in, schema);
  } else if (algo == "twopass-bot") {
    r = validate_fcns_twopass(m, in, schema);
  } else if (algo == "pipeline") {
    r = validate_general(m, in, schema);
  } else {
    throw UsageError("unknown validate algorithm '" + algo + "'");
  }
  std::cout << r.verdict.to_string() << '\n';
  emit_stats(c, r.stats);
  return r.verdict.valid ? kOk : kInvalid;
}

int run_encode(const Common& c, const std::string& algo, bool bot) {
  Doc doc = read_doc(c.input);
  if (algo == "offline") {
    Doc fcns = encode_offline(build_tree(doc));
    emit_doc(c, bot ? to_bot_form(fcns) : fcns);
    return kOk;
  }
  if (algo != "streaming") throw UsageError("unknown encode algorithm '" + algo + "'");
  Machine m(c.budget());
  TapeId in = m.load_input(std::move(doc.tokens));
  EncodeReport r = encode_streaming(m, in, bot);
  emit_doc(c, tape_doc(m, r.output));
  emit_stats(c, r.stats);
  return kOk;
}

Doc decode_with(const Common& c, const std::string& algo, Doc fcns, RunStats* stats) {
  if (algo == "offline") return decode_offline(fcns);
  Machine m(c.budget());
  TapeId in = m.load_input(std::move(fcns.tokens));
  DecodeReport r;
  if (algo == "sqrt") {
    r = decode_sqrt(m, in);
  } else if (algo == "logpass") {
    r = decode_logpass(m, in);
  } else {
    throw UsageError("unknown decode algorithm '" + algo + "'");
  }
  if (stats) *stats = r.stats;
  return tape_doc(m, r.output);
}

int run_decode(const Common& c, const std::string& algo, bool bot) {
  Doc fcns = read_doc(c.input);
  if (bot) fcns = from_bot_form(fcns);
  RunStats stats;
  Doc out = decode_with(c, algo, std::move(fcns), &stats);
  emit_doc(c, out);
  if (algo != "offline") emit_stats(c, stats);
  return kOk;
}

// FCNS input: decode then re-encode. Plain input: encode then decode.
int run_roundtrip(const Common& c, const std::string& algo) {
  Doc doc = read_doc(c.input);
  RunStats stats;
  Doc back;
  if (has_variants(doc)) {
    Doc plain = decode_with(c, algo, doc, &stats);
    Machine m(c.budget());
    TapeId in = m.load_input(std::move(plain.tokens));
    back = tape_doc(m, encode_streaming(m, in).output);
  } else {
    Machine m(c.budget());
    TapeId in = m.load_input(doc.tokens);
    Doc fcns = tape_doc(m, encode_streaming(m, in).output);
    back = decode_with(c, algo, std::move(fcns), &stats);
  }
  bool same = back == doc;
  std::cout << (same ? "identical" : "different") << '\n';
  if (algo != "offline") emit_stats(c, stats);
  return same ? kOk : kInvalid;
}

std::vector<std::uint8_t> parse_bits(const std::string& s) {
  std::vector<std::uint8_t> out;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw UsageError("bitstring expected, got '" + s + "'");
    out.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

struct GenArgs {
  std::string kind = "random";
  std::size_t n = 10;
  std::size_t m = 1;
  std::size_t k = 1;
  std::size_t fanout = 4;
  std::size_t labels = 3;
  std::string x, y, ks, ds;
  std::uint64_t seed = 1;
  bool fit_dtd = false;
};

int run_gen(const Common& c, const GenArgs& g) {
  std::mt19937_64 rng(g.seed);
  auto random_bits = [&](std::size_t n) {
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = rng() & 1;
    return v;
  };
  std::optional<Dtd> dtd;
  Doc doc;
  if (g.kind == "random") {
    Tree t = gen_random_tree(g.n, g.fanout, g.labels, g.seed);
    doc = serialize(t);
    if (g.fit_dtd) dtd = gen_dtd_for_tree(t);
  } else if (g.kind == "binary") {
    Tree t = gen_random_binary_tree(g.n, g.labels, g.seed);
    doc = serialize(t);
    if (g.fit_dtd) dtd = gen_dtd_for_tree(t);
  } else if (g.kind == "disj") {
    auto x = g.x.empty() ? random_bits(g.n) : parse_bits(g.x);
    auto y = g.y.empty() ? random_bits(x.size()) : parse_bits(g.y);
    Instance inst = gen_disj(x, y);
    doc = std::move(inst.doc);
    dtd = std::move(inst.dtd);
  } else if (g.kind == "appb") {
    std::vector<Gadget> gadgets;
    auto xs = split(g.x, ',');
    auto ks = split(g.ks, ',');
    auto ds = split(g.ds, ',');
    std::size_t count = g.x.empty() ? g.m : xs.size();
    for (std::size_t i = 0; i < count; ++i) {
      Gadget gd;
      gd.x = g.x.empty() ? random_bits(std::max<std::size_t>(g.n, 2)) : parse_bits(xs[i]);
      if (gd.x.size() < 2) throw UsageError("appb gadgets need at least 2 bits");
      gd.k = i < ks.size() ? std::stoul(ks[i]) : 1 + rng() % (gd.x.size() - 1);
      gd.d = i < ds.size() ? static_cast<std::uint8_t>(std::stoul(ds[i])) : static_cast<std::uint8_t>(rng() & 1);
      gadgets.push_back(std::move(gd));
    }
    Instance inst = gen_appb(gadgets);
    doc = std::move(inst.doc);
    dtd = std::move(inst.dtd);
  } else if (g.kind == "star") {
    doc = gen_star(g.n);
  } else if (g.kind == "caterpillar") {
    Tree sub = gen_random_tree(std::max<std::size_t>(g.n, 1), g.fanout, g.labels, g.seed);
    doc = gen_caterpillar_decode(g.n, g.k, sub);
  } else {
    throw UsageError("unknown generator kind '" + g.kind + "'");
  }
  emit_doc(c, doc);
  if (dtd) {
    if (c.output.empty()) {
      std::cout << dtd->to_text();
    } else {
      write_file(fs::path(c.output).replace_extension(".dtd").string(), dtd->to_text());
    }
  }
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool needs_input, bool metered) {
  if (needs_input) sub->add_option("input", c.input, "input document")->required()->check(CLI::ExistingFile);
  if (metered) {
    sub->add_option("--stats", c.stats, "append the run statistics record")->check(CLI::IsMember({"text", "none"}));
    sub->add_flag("--enforce-budget", c.enforce, "abort when a budget is exceeded");
    sub->add_option("--max-passes", c.max_passes, "pass budget");
    sub->add_option("--max-cells", c.max_cells, "internal memory budget in cells");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming validation and FCNS transforms for tag-only XML documents"};
  app.require_subcommand(1);
  Common c;
  std::string dtd_path;
  std::string validate_algo, encode_algo = "streaming", decode_algo = "logpass", roundtrip_algo = "logpass";
  bool bot = false;
  GenArgs g;

  auto* wf = app.add_subcommand("wf", "check well-formedness");
  add_common(wf, c, true, false);

  auto* validate = app.add_subcommand("validate", "validate a document against a DTD");
  add_common(validate, c, true, true);
  validate->add_option("--dtd", dtd_path, "DTD file")->required()->check(CLI::ExistingFile);
  validate->add_option("--algo", validate_algo, "algorithm")
      ->required()
      ->check(CLI::IsMember({"onepass-bin", "twopass-bin", "onepass-bot", "twopass-bot", "pipeline", "oracle"}));

  auto* encode = app.add_subcommand("encode", "FCNS-encode a document");
  add_common(encode, c, true, true);
  encode->add_option("-o,--output", c.output, "output file (default stdout)");
  encode->add_option("--algo", encode_algo, "algorithm")->capture_default_str()->check(CLI::IsMember({"offline", "streaming"}));
  encode->add_flag("--bot", bot, "emit the full binary _ form");

  auto* decode = app.add_subcommand("decode", "decode an FCNS document");
  add_common(decode, c, true, true);
  decode->add_option("-o,--output", c.output, "output file (default stdout)");
  decode->add_option("--algo", decode_algo, "algorithm")->capture_default_str()->check(CLI::IsMember({"offline", "sqrt", "logpass"}));
  decode->add_flag("--bot", bot, "input is in the _ form");

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("-o,--output", c.output, "output file; a DTD goes beside it with extension .dtd");
  gen->add_option("--kind", g.kind, "instance family")
      ->check(CLI::IsMember({"random", "binary", "disj", "appb", "star", "caterpillar"}));
  gen->add_option("-n", g.n, "size: nodes, internal nodes, bit length, or spine length");
  gen->add_option("-m", g.m, "appb gadget count when bits are random");
  gen->add_option("-k", g.k, "caterpillar attach index");
  gen->add_option("--fanout", g.fanout, "random tree fan-out bound");
  gen->add_option("--labels", g.labels, "random tree label count");
  gen->add_option("--x", g.x, "disj x bits, or comma-separated appb gadget bits");
  gen->add_option("--y", g.y, "disj y bits");
  gen->add_option("--ks", g.ks, "comma-separated appb k values");
  gen->add_option("--ds", g.ds, "comma-separated appb d bits");
  gen->add_option("--seed", g.seed, "random seed");
  gen->add_flag("--fit-dtd", g.fit_dtd, "also write a DTD fitted to a random tree");

  auto* roundtrip = app.add_subcommand("roundtrip", "check decode and encode are inverse on a document");
  add_common(roundtrip, c, true, true);
  roundtrip->add_option("--algo", roundtrip_algo, "decoder")->capture_default_str()->check(CLI::IsMember({"offline", "sqrt", "logpass"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*wf) return run_wf(c);
    if (*validate) return run_validate(c, dtd_path, validate_algo);
    if (*encode) return run_encode(c, encode_algo, bot);
    if (*decode) return run_decode(c, decode_algo, bot);
    if (*gen) return run_gen(c, g);
    if (*roundtrip) return run_roundtrip(c, roundtrip_algo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
