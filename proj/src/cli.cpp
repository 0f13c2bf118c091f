#include "hypopq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypopq/asymptotics.hpp"
#include "hypopq/dpainleve.hpp"
#include "hypopq/error.hpp"
#include "hypopq/oracle.hpp"
#include "hypopq/rational.hpp"
#include "hypopq/toda_sigma.hpp"
#include "hypopq/weights.hpp"

namespace hypopq::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kCsvDigits = 30;

struct Options {
  std::string alpha;
  std::string beta;
  std::string gamma;
  std::string c;
  std::string lattice = "standard";
  std::size_t nmax = 10;
  std::optional<long> bits;
  std::optional<int> digits;
  std::optional<std::string> h;
  std::string format = "json";
  std::optional<std::string> output;
  std::optional<std::string> seed_x0;
  std::string source = "oracle";
  std::vector<std::size_t> ns;
  std::vector<std::string> deltas{"1e-6", "-1e-6"};
  std::vector<int> levels{10, 20, 50};
  std::optional<std::string> tol;
};

/// A record field: an index, a real, a text or a flag.
using Field = std::variant<std::size_t, BigReal, std::string, bool, std::monostate>;
using Record = std::vector<std::pair<std::string, Field>>;

struct Output {
  json meta = json::object();
  std::vector<Record> records;
  int exit_code = kOk;
  /// Reported after the partial records are written.
  std::optional<Error> fatal;
};

long default_bits() {
  if (const char* env = std::getenv("HYPOPQ_DEFAULT_BITS")) {
    try {
      std::size_t used = 0;
      const long v = std::stol(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::InvalidParam, "HYPOPQ_DEFAULT_BITS must be an integer");
  }
  return 256;
}

PrecisionCtx make_ctx(const Options& o) {
  PrecisionCtx ctx;
  if (o.bits) {
    ctx.bits = *o.bits;
  } else if (o.digits) {
    if (*o.digits <= 0) throw Error(ErrorKind::InvalidParam, "digits must be positive");
    ctx.bits = bits_for_digits(*o.digits);
  } else {
    ctx.bits = default_bits();
  }
  ctx.validate();
  return ctx;
}

struct ParsedParams {
  Params params;
  bool inexact = false;
};

ParsedParams make_params(const Options& o) {
  const ParsedRational a = parse_rational(o.alpha);
  const ParsedRational b = parse_rational(o.beta);
  const ParsedRational g = parse_rational(o.gamma);
  const ParsedRational c = parse_rational(o.c);
  ParsedParams out{{a.value, b.value, g.value, c.value, parse_lattice(o.lattice)}, false};
  out.inexact = !(a.exact_form && b.exact_form && g.exact_form && c.exact_form);
  out.params.validate();
  return out;
}

BigReal parse_real(const std::string& text, const PrecisionCtx& ctx) {
  return ctx.real(parse_rational(text).value);
}

BigReal make_step(const Options& o, const PrecisionCtx& ctx) {
  return o.h ? parse_real(*o.h, ctx) : default_step(ctx);
}

std::string field_json(const Field& f) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BigReal>) return v.to_string();
        if constexpr (std::is_same_v<T, std::size_t>) return std::to_string(v);
        if constexpr (std::is_same_v<T, std::string>) return v;
        if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        return "";
      },
      f);
}

json to_json(const Record& r) {
  json j = json::object();
  for (const auto& [key, f] : r) {
    if (const auto* n = std::get_if<std::size_t>(&f)) {
      j[key] = *n;
    } else if (const auto* b = std::get_if<bool>(&f)) {
      j[key] = *b;
    } else if (std::holds_alternative<std::monostate>(f)) {
      j[key] = nullptr;
    } else {
      j[key] = field_json(f);
    }
  }
  return j;
}

std::string csv_cell(const Field& f) {
  if (const auto* v = std::get_if<BigReal>(&f)) {
    const int full = static_cast<int>(std::ceil(static_cast<double>(v->bits()) * std::log10(2.0))) + 2;
    return v->to_string(std::min(kCsvDigits, full));
  }
  std::string s = field_json(f);
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return s;
}

void write_output(const std::string& command, const Output& result, const Options& o, std::ostream& out) {
  std::ostringstream buf;
  if (o.format == "csv") {
    if (!result.records.empty()) {
      const Record& first = result.records.front();
      for (std::size_t i = 0; i < first.size(); ++i) buf << (i ? "," : "") << first[i].first;
      buf << '\n';
      for (const Record& r : result.records) {
        for (std::size_t i = 0; i < r.size(); ++i) buf << (i ? "," : "") << csv_cell(r[i].second);
        buf << '\n';
      }
    }
  } else {
    json doc = json::object();
    doc["command"] = command;
    doc["meta"] = result.meta;
    json recs = json::array();
    for (const Record& r : result.records) recs.push_back(to_json(r));
    doc["records"] = recs;
    buf << doc.dump(2) << '\n';
  }
  if (o.output) {
    std::ofstream file(*o.output, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidParam, "cannot open output file " + *o.output);
    file << buf.str();
  } else {
    out << buf.str();
  }
}

json base_meta(const ParsedParams& pp, const PrecisionCtx& ctx) {
  json m = json::object();
  m["alpha"] = to_string(pp.params.alpha);
  m["beta"] = to_string(pp.params.beta);
  m["gamma"] = to_string(pp.params.gamma);
  m["c"] = to_string(pp.params.c);
  m["lattice"] = std::string(to_string(pp.params.lattice));
  m["bits"] = ctx.bits;
  m["inexact_input"] = pp.inexact;
  return m;
}

Field opt_field(const std::optional<BigReal>& v) {
  if (v) return *v;
  return std::monostate{};
}

Field opt_field(const std::optional<std::size_t>& v) {
  if (v) return *v;
  return std::monostate{};
}

Record sequence_record(std::size_t n, const XYSeq& xy, const CoeffSeq& co) {
  return {{"n", n}, {"x", xy.x[n]}, {"y", xy.y[n]}, {"a2", co.a2[n]}, {"b", co.b[n]}, {"S", xy.S[n]}};
}

void add_residuals(Output& result, const ResidualReport& report) {
  for (const ResidualEntry& e : report.entries()) {
    result.records.push_back({{"name", e.name}, {"n", e.n}, {"residual", e.residual}, {"tolerance", e.tolerance},
                              {"passes", e.passes()}});
  }
  if (auto w = report.worst()) {
    result.meta["max_residual"] = w->residual.to_string();
    result.meta["worst_identity"] = w->name;
    result.meta["worst_n"] = w->n;
  }
  result.meta["passes"] = report.passes();
  if (!report.passes()) result.exit_code = kCheckFailed;
}

void add_studies(Output& result, const std::vector<StudyReport>& studies) {
  for (const StudyReport& s : studies) {
    Record r{{"bits", static_cast<std::size_t>(s.bits)}};
    r.emplace_back("digits", s.digits ? Field(static_cast<std::size_t>(*s.digits)) : Field(std::monostate{}));
    r.emplace_back("delta", opt_field(s.delta));
    r.emplace_back("N", s.N);
    r.emplace_back("x_limit_gap", opt_field(s.x_limit_gap));
    r.emplace_back("y_limit_gap", opt_field(s.y_limit_gap));
    r.emplace_back("divergence_index", opt_field(s.divergence_index));
    r.emplace_back("notes", s.notes);
    result.records.push_back(std::move(r));
  }
}

Output cmd_moments(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  const MomentTable table = moment_table(pp.params, o.nmax + 1, ctx);
  for (std::size_t n = 0; n <= o.nmax; ++n) result.records.push_back({{"n", n}, {"m", table.moments[n]}});
  return result;
}

Output cmd_coeffs(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  const CoeffSeq co = coeffs_oracle(pp.params, o.nmax, ctx);
  if (co.agreed_digits) result.meta["agreed_digits"] = *co.agreed_digits;
  for (std::size_t n = 0; n <= o.nmax; ++n) result.records.push_back({{"n", n}, {"a2", co.a2[n]}, {"b", co.b[n]}});
  return result;
}

Output cmd_ladder(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  const CoeffSeq co = coeffs_oracle(pp.params, o.nmax, ctx);
  const LadderSeq l = ladder_sequences(pp.params, co, ctx);
  for (std::size_t n = 0; n < l.size(); ++n) {
    result.records.push_back({{"n", n}, {"u", l.u[n]}, {"v", l.v[n]}, {"r", l.r[n]}, {"s", l.s[n]}});
  }
  return result;
}

Output cmd_xy(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  const CoeffSeq co = coeffs_oracle(pp.params, o.nmax, ctx);
  const XYSeq xy = xy_from_coeffs(pp.params, co, ctx);
  for (std::size_t n = 0; n <= o.nmax; ++n) result.records.push_back(sequence_record(n, xy, co));
  return result;
}

Output cmd_iterate(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  std::optional<InitialXY> seed;
  if (o.seed_x0) {
    seed = initial_xy(pp.params, ctx);
    seed->x0 = parse_real(*o.seed_x0, ctx);
    result.meta["seed_x0"] = seed->x0.to_string();
    if (!parse_rational(*o.seed_x0).exact_form) result.meta["inexact_input"] = true;
  }
  const IterateResult run = iterate(pp.params, o.nmax, ctx, seed);
  result.meta["closed_form"] = run.closed_form;
  result.meta["suspect_at"] = run.suspect_at ? json(*run.suspect_at) : json(nullptr);
  const CoeffSeq co = coeffs_from_xy(pp.params, run.xy, ctx);
  for (std::size_t n = 0; n < run.xy.size(); ++n) result.records.push_back(sequence_record(n, run.xy, co));
  if (!run.complete()) {
    result.meta["failed_at"] = *run.failed_at;
    result.fatal = Error(ErrorKind::SingularStep, run.failure);
  }
  return result;
}

Output cmd_verify(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  const BigReal tol = o.tol ? parse_real(*o.tol, ctx) : default_residual_tolerance(ctx);
  const SequenceSource source = parse_source(o.source);
  result.meta["source"] = std::string(to_string(source));
  result.meta["tolerance"] = tol.to_string();

  CoeffSeq co;
  XYSeq xy;
  if (source == SequenceSource::Oracle) {
    co = coeffs_oracle(pp.params, o.nmax, ctx);
    xy = xy_from_coeffs(pp.params, co, ctx);
  } else {
    IterateResult run = iterate(pp.params, o.nmax, ctx);
    if (!run.complete()) throw Error(ErrorKind::SingularStep, run.failure);
    xy = std::move(run.xy);
    co = coeffs_from_xy(pp.params, xy, ctx);
  }
  ResidualReport report = dp_residuals(pp.params, xy, &co, ctx, tol);
  if (pp.params.alpha != pp.params.beta) {
    report.merge(ladder_residuals(pp.params, co, tol, ctx));
  } else {
    result.meta["ladder"] = "skipped: alpha == beta";
  }
  if (!o.ns.empty()) {
    const BigReal h = make_step(o, ctx);
    const BigReal toda_tol = o.tol ? tol : BigReal::parse("1e-15", ctx.bits);
    for (std::size_t n : o.ns) report.merge(toda_residuals(pp.params, n, h, source, ctx, toda_tol));
  }
  add_residuals(result, report);
  return result;
}

Output cmd_sigma(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  const SequenceSource source = parse_source(o.source);
  const BigReal h = make_step(o, ctx);
  result.meta["source"] = std::string(to_string(source));
  result.meta["h"] = h.to_string();
  const std::vector<std::size_t> ns = o.ns.empty() ? std::vector<std::size_t>{1, 3, 5, 10} : o.ns;
  const BigReal c = ctx.real(pp.params.c);
  for (std::size_t n : ns) {
    result.records.push_back({{"n", n},
                              {"sigma", sigma_value(pp.params, n, c, source, ctx)},
                              {"residual", sigma_pvi_residual(pp.params, n, h, source, ctx)}});
  }
  return result;
}

Output cmd_riccati(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  const BigReal h = make_step(o, ctx);
  result.meta["h"] = h.to_string();
  const BigReal k = riccati_constant(pp.params, h, ctx);
  const BigReal expected = -ctx.real(pp.params.gamma);
  result.records.push_back({{"constant", k}, {"expected", expected}, {"gap", abs(k - expected)}});
  return result;
}

Output cmd_asymptotics(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  add_studies(result, {limit_report(pp.params, o.nmax, ctx)});
  return result;
}

Output cmd_precision_study(const Options& o) {
  const ParsedParams pp = make_params(o);
  PrecisionCtx ctx;
  ctx.bits = default_bits();
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  result.meta.erase("bits");
  add_studies(result, precision_study(pp.params, o.levels, o.nmax));
  return result;
}

Output cmd_perturb(const Options& o) {
  const ParsedParams pp = make_params(o);
  const PrecisionCtx ctx = make_ctx(o);
  Output result{base_meta(pp, ctx), {}, kOk, {}};
  std::vector<BigReal> deltas;
  for (const std::string& d : o.deltas) deltas.push_back(parse_real(d, ctx));
  std::optional<BigReal> x0;
  if (o.seed_x0) x0 = parse_real(*o.seed_x0, ctx);
  add_studies(result, perturbation_study(pp.params, deltas, o.nmax, ctx, x0));
  return result;
}

std::string error_json(std::string_view kind, const std::string& message) {
  json j = json::object();
  j["error"] = std::string(kind);
  j["message"] = message;
  return j.dump();
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParam:
    case ErrorKind::StepTooSmall:
    case ErrorKind::DomainExceeded:
      return kValidation;
    case ErrorKind::PrecisionExhausted:
      return kPrecisionExhausted;
    case ErrorKind::SingularStep:
      return kSingularStep;
    default:
      return kFailure;
  }
}

struct Command {
  const char* name;
  const char* help;
  Output (*fn)(const Options&);
};

const Command kCommands[] = {
    {"moments", "moments m_0..m_nmax", cmd_moments},
    {"coeffs", "recurrence coefficients a_n^2, b_n from Hankel determinants", cmd_coeffs},
    {"ladder", "ladder sequences u_n, v_n, r_n, s_n", cmd_ladder},
    {"xy", "x_n, y_n, S_n from the oracle coefficients", cmd_xy},
    {"iterate", "x_n, y_n by the discrete Painleve recurrence", cmd_iterate},
    {"verify", "identity residual suite", cmd_verify},
    {"sigma", "sigma_n and the sigma-form Painleve VI residual", cmd_sigma},
    {"riccati", "Riccati constant of the seed x_0", cmd_riccati},
    {"asymptotics", "gaps to the conjectured limits at n = nmax", cmd_asymptotics},
    {"precision-study", "divergence index per digit level", cmd_precision_study},
    {"perturb", "divergence index per seed perturbation", cmd_perturb},
};

void add_common(CLI::App* sub, Options& o, bool with_precision) {
  sub->add_option("--alpha", o.alpha, "alpha (rational, e.g. 3/2)")->required();
  sub->add_option("--beta", o.beta, "beta")->required();
  sub->add_option("--gamma", o.gamma, "gamma")->required();
  sub->add_option("--c", o.c, "c in (0,1)")->required();
  sub->add_option("--lattice", o.lattice, "standard or shifted")->check(CLI::IsMember({"standard", "shifted"}));
  sub->add_option("--nmax", o.nmax, "largest index");
  if (with_precision) {
    auto* b = sub->add_option("--bits", o.bits, "working precision in bits");
    auto* d = sub->add_option("--digits", o.digits, "working precision in decimal digits");
    b->excludes(d);
  }
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", o.output, "write to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recurrence coefficients and discrete Painleve checks for hypergeometric weights", "hypopq"};
  app.require_subcommand(1);
  Options o;
  for (const Command& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->set_help_flag("--help", "print this help and exit");
    const std::string name = cmd.name;
    add_common(sub, o, name != "precision-study");
    if (name == "iterate" || name == "perturb") sub->add_option("--seed-x0", o.seed_x0, "override the seed x_0");
    if (name == "verify" || name == "sigma") {
      sub->add_option("--source", o.source, "oracle or iterate")->check(CLI::IsMember({"oracle", "iterate"}));
      sub->add_option("--n", o.ns, name == "verify" ? "indices for the Toda checks" : "indices");
      sub->add_option("--h", o.h, "stencil step (rational or 2^k)");
    }
    if (name == "riccati") sub->add_option("--h", o.h, "stencil step (rational or 2^k)");
    if (name == "verify") sub->add_option("--tol", o.tol, "residual tolerance");
    if (name == "perturb") sub->add_option("--deltas", o.deltas, "seed perturbations")->delimiter(',');
    if (name == "precision-study") sub->add_option("--levels", o.levels, "digit levels")->delimiter(',');
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("InvalidParam", e.what()) << '\n';
    return kValidation;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    for (const Command& cmd : kCommands) {
      if (name != cmd.name) continue;
      const Output result = cmd.fn(o);
      write_output(name, result, o, out);
      if (result.fatal) {
        err << error_json(to_string(result.fatal->kind()), result.fatal->what()) << '\n';
        return exit_code_for(result.fatal->kind());
      }
      return result.exit_code;
    }
  } catch (const Error& e) {
    err << error_json(to_string(e.kind()), e.what()) << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << error_json("Internal", e.what()) << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace hypopq::cli
