// Copyright 2026 The sreason Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sreason/fragments.hpp"
#include "sreason/harness.hpp"
#include "sreason/transpile.hpp"

namespace sreason::cli {
namespace {

using json = nlohmann::ordered_json;
using AnyProgram = std::variant<LdsrProgram, LarsProgram>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Structured };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Language language_of(const std::string& path, const std::string& forced) {
  if (forced == "ldsr") return Language::Ldsr;
  if (forced == "lars") return Language::Lars;
  if (!forced.empty()) throw UsageError("unknown language '" + forced + "' (expected ldsr or lars)");
  if (ends_with(path, ".ldsr")) return Language::Ldsr;
  if (ends_with(path, ".lars")) return Language::Lars;
  throw UsageError("cannot tell the language of '" + path + "'; use --lang");
}

/// The signature file is read as a prefix of the program, so declarations
/// in the program that conflict with it are errors.
AnyProgram load_program(const std::string& path, const std::string& forced, const std::string& signature) {
  const Language lang = language_of(path, forced);
  const std::string prefix = signature.empty() ? "" : read_file(signature) + "\n";
  const int shift = static_cast<int>(std::count(prefix.begin(), prefix.end(), '\n'));
  const std::string text = prefix + read_file(path);
  try {
    if (lang == Language::Ldsr) return parse_ldsr(text);
    return parse_lars(text);
  } catch (const ParseError& e) {
    std::string msg;
    for (const auto& d : e.diagnostics()) {
      if (!msg.empty()) msg += "\n";
      const bool in_sig = d.line > 0 && d.line <= shift;
      msg += (in_sig ? signature : path) + ":" + std::to_string(in_sig ? d.line : std::max(0, d.line - shift)) + ":" +
             std::to_string(d.column) + ": " + d.message;
    }
    throw Error(msg);
  }
}

Stream load_stream(const std::string& path) {
  if (path.empty()) return Stream();
  const std::string text = read_file(path);
  return ends_with(path, ".json") ? parse_stream_json(text) : parse_stream_text(text);
}

AtomSet load_background(const std::string& path) { return path.empty() ? AtomSet{} : parse_atom_set(read_file(path)); }

std::string program_text(const AnyProgram& p) {
  return std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, LdsrProgram>) {
          return print_ldsr(x);
        } else {
          return print_lars(x);
        }
      },
      p);
}

Language language(const AnyProgram& p) { return p.index() == 0 ? Language::Ldsr : Language::Lars; }

json atoms_json(const AtomSet& atoms) {
  json out = json::array();
  for (const auto& a : atoms) out.push_back(a.str());
  return out;
}

json stream_json(const Stream& s) { return json::parse(print_stream_json(s)); }

json diff_json(const Verdict& v) {
  if (!v.first_diff) return nullptr;
  return json{{"time", v.first_diff->time},
              {"only_left", atoms_json(v.first_diff->only_left)},
              {"only_right", atoms_json(v.first_diff->only_right)}};
}

std::string diff_text(const StreamDiff& d) {
  return "slot " + std::to_string(d.time) + ": only left {" + to_string(d.only_left) + "}, only right {" +
         to_string(d.only_right) + "}";
}

json declarations_json(const Signature& sig) {
  json out = json::array();
  for (const auto& [name, d] : sig.decls()) {
    out.push_back({{"name", name},
                   {"kind", std::string(to_string(d.kind))},
                   {"arity", d.arity},
                   {"declared", sig.explicit_names().count(name) != 0}});
  }
  return out;
}

// {{{1 subcommands

struct Common {
  std::string lang;
  std::string signature;
};

int cmd_parse(const std::string& file, const Common& c, Format fmt, std::ostream& out) {
  const AnyProgram p = load_program(file, c.lang, c.signature);
  if (fmt == Format::Text) {
    out << program_text(p);
    return kOk;
  }
  json rules = json::array();
  std::visit(
      [&](const auto& x) {
        for (const auto& r : x.rules) rules.push_back(r.str());
      },
      p);
  const Signature& sig = std::visit([](const auto& x) -> const Signature& { return x.signature; }, p);
  out << json{{"language", to_string(language(p))}, {"declarations", declarations_json(sig)}, {"rules", rules}}.dump(2)
      << "\n";
  return kOk;
}

int cmd_classify(const std::string& file, const Common& c, const std::string& require, Format fmt,
                 std::ostream& out) {
  const AnyProgram p = load_program(file, c.lang, c.signature);
  const bool lars = language(p) == Language::Lars;
  const FragmentVerdict v = lars ? classify_lars_fragments(std::get<LarsProgram>(p))
                                 : classify_ldsr_fragments(std::get<LdsrProgram>(p));
  std::optional<Fragment> wanted;
  if (!require.empty()) {
    try {
      wanted = parse_fragment(require);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (is_lars_fragment(*wanted) != lars) throw UsageError(to_string(*wanted) + " does not apply to this language");
  }
  if (fmt == Format::Text) {
    out << format_verdict(v, lars);
  } else {
    json members = json::array();
    for (auto f : v.memberships) members.push_back(to_string(f));
    json violations = json::array();
    for (const auto& x : v.violations) {
      violations.push_back({{"fragment", to_string(x.fragment)},
                            {"condition", x.condition},
                            {"message", x.message},
                            {"rule", x.rule ? json(*x.rule) : json(nullptr)},
                            {"predicates", x.predicates}});
    }
    out << json{{"language", to_string(language(p))}, {"memberships", members}, {"violations", violations}}.dump(2)
        << "\n";
  }
  return wanted && !v.member(*wanted) ? kFailure : kOk;
}

int cmd_translate(const std::string& file, const Common& c, int rho, Format fmt, std::ostream& out) {
  const AnyProgram p = load_program(file, c.lang, c.signature);
  const bool from_lars = rho <= 3;
  if (from_lars != (language(p) == Language::Lars)) {
    throw UsageError("rho" + std::to_string(rho) + " expects a " + (from_lars ? "LARS" : "LDSR") + " program");
  }
  std::string text;
  std::set<std::string> aux;
  std::vector<ProvenanceEntry> prov;
  auto take = [&](auto translation) {
    text = program_text(translation.program);
    aux = translation.aux_predicates;
    prov = translation.provenance;
  };
  switch (rho) {
    case 1: take(rho1(std::get<LarsProgram>(p))); break;
    case 2: take(rho2(std::get<LarsProgram>(p))); break;
    case 3: take(rho3(std::get<LarsProgram>(p))); break;
    case 4: take(rho4(std::get<LdsrProgram>(p))); break;
    case 5: take(rho5(std::get<LdsrProgram>(p))); break;
    case 6: take(rho6(std::get<LdsrProgram>(p))); break;
    default: take(rho7(std::get<LdsrProgram>(p))); break;
  }
  if (fmt == Format::Text) {
    out << text;
    for (const auto& e : prov) {
      out << "% rule " << e.output_rule << " <- "
          << (e.source_rule ? "rule " + std::to_string(*e.source_rule) : std::string("count atom")) << " via "
          << e.helper << "\n";
    }
    return kOk;
  }
  json provenance = json::array();
  for (const auto& e : prov) {
    provenance.push_back({{"output_rule", e.output_rule},
                          {"source_rule", e.source_rule ? json(*e.source_rule) : json(nullptr)},
                          {"helper", e.helper}});
  }
  out << json{{"rho", rho}, {"program", text}, {"aux_predicates", aux}, {"provenance", provenance}}.dump(2) << "\n";
  return kOk;
}

struct Inputs {
  std::string stream;
  std::string background;
  std::optional<std::size_t> t;
  std::string profile = "bound";
};

int cmd_eval(const std::string& file, const Common& c, const Inputs& in, Format fmt, std::ostream& out) {
  const AnyProgram p = load_program(file, c.lang, c.signature);
  const LTuple tuple{p, load_stream(in.stream), load_background(in.background)};
  const Profile phi = parse_profile(in.profile);
  const std::size_t t = in.t.value_or(tuple.input.n());
  if (t > tuple.input.n()) throw UsageError("--t " + std::to_string(t) + " is after the stream end " + std::to_string(tuple.input.n()));
  const ProfileOutput o = profile_output(tuple, t, phi);
  if (fmt == Format::Text) {
    out << "% " << to_string(phi) << " output at t=" << t << "\n" << print_stream_text(o.stream);
  } else {
    out << json{{"profile", to_string(phi)}, {"t", t}, {"stream", stream_json(o.stream)}}.dump(2) << "\n";
  }
  return kOk;
}

int cmd_diff(const std::string& src, const std::string& dst, const Common& c, const Inputs& in, bool strict,
             Format fmt, std::ostream& out) {
  const Stream input = load_stream(in.stream);
  const AtomSet bg = load_background(in.background);
  const LTuple a{load_program(src, c.lang, c.signature), input, bg};
  const LTuple b{load_program(dst, c.lang, c.signature), input, bg};
  const Profile phi = parse_profile(in.profile);
  std::vector<std::size_t> points;
  if (in.t) {
    if (*in.t > input.n()) throw UsageError("--t is after the stream end");
    points.push_back(*in.t);
  } else {
    for (std::size_t t = 0; t <= input.n(); ++t) points.push_back(t);
  }
  bool all_equal = true;
  json results = json::array();
  for (auto t : points) {
    const Verdict v = check_expressibility(a, b, t, phi, strict);
    all_equal = all_equal && v.equal;
    if (fmt == Format::Text) {
      out << "t=" << t << " " << (v.equal ? "equal" : "differ");
      if (v.first_diff) out << " at " << diff_text(*v.first_diff);
      out << "\n";
    } else {
      results.push_back({{"t", t}, {"equal", v.equal}, {"diff", diff_json(v)}});
    }
  }
  if (fmt == Format::Structured) {
    out << json{{"profile", to_string(phi)}, {"strict", strict}, {"equal", all_equal}, {"results", results}}.dump(2)
        << "\n";
  }
  return all_equal ? kOk : kFailure;
}

struct FuzzOptions {
  std::string fragment;
  int rho = 0;
  std::string profile;
  bool strict = false;
  bool filtered = false;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::size_t max_n = GenBounds{}.max_n;
};

int cmd_fuzz(const FuzzOptions& o, Format fmt, std::ostream& out) {
  const RhoGuarantee g = rho_guarantee(o.rho);
  CampaignConfig config;
  config.rho = o.rho;
  try {
    config.fragment = o.fragment.empty() ? rho_fragment(o.rho) : parse_fragment(o.fragment);
    config.profile = o.profile.empty() ? g.max_profile : parse_profile(o.profile);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  config.strict = o.strict ? true : o.filtered ? false : g.strict;
  config.trials = o.trials;
  config.seed = o.seed;
  config.bounds.max_n = o.max_n;
  if (auto why = campaign_config_error(config)) throw UsageError(*why);
  const CampaignReport r = differential_campaign(config);
  const std::string label = to_string(config.fragment) + " rho" + std::to_string(config.rho) + " " +
                            to_string(config.profile) + " " + (config.strict ? "strict" : "filtered");
  if (fmt == Format::Text) {
    for (const auto& t : r.trials) {
      if (t.passed) continue;
      out << "FAIL seed " << t.seed << " n=" << t.n;
      if (t.t) out << " t=" << *t.t;
      if (!t.error.empty()) out << " error: " << t.error;
      if (t.verdict.first_diff) out << " " << diff_text(*t.verdict.first_diff);
      out << "\n";
    }
    out << label << ": " << r.passes << "/" << r.trials.size() << " passed, acceptance rate " << r.acceptance_rate()
        << "\n";
  } else {
    json records = json::array();
    for (const auto& t : r.trials) {
      records.push_back({{"seed", t.seed},
                         {"fragment", to_string(config.fragment)},
                         {"profile", to_string(config.profile)},
                         {"strict", config.strict},
                         {"t_range", {0, t.n}},
                         {"verdict", t.passed ? "pass" : "fail"},
                         {"t", t.t ? json(*t.t) : json(nullptr)},
                         {"diff", diff_json(t.verdict)},
                         {"error", t.error.empty() ? json(nullptr) : json(t.error)}});
    }
    out << json{{"rho", config.rho},
                {"passes", r.passes},
                {"trials", r.trials.size()},
                {"acceptance_rate", r.acceptance_rate()},
                {"records", records}}
               .dump(2)
        << "\n";
  }
  return r.ok() ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for LDSR and LARS_D stream reasoning programs", "sreason"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lang", common.lang, "Program language (default: from the file extension)")
        ->check(CLI::IsMember({"ldsr", "lars"}));
    sub->add_option("--signature", common.signature, "File with declarations read before the program");
  };
  Inputs inputs;
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--stream", inputs.stream, "Input stream (text, or .json)");
    sub->add_option("--background", inputs.background, "Background atoms");
    sub->add_option("--t", inputs.t, "Evaluation time point (default: last)");
    sub->add_option("--profile", inputs.profile, "atomic, bound or full")
        ->check(CLI::IsMember({"atomic", "bound", "full"}));
  };

  std::string file, file2, require;
  int rho = 0;
  bool strict = false;
  FuzzOptions fuzz;
  std::function<int(Format)> action;

  auto* parse = app.add_subcommand("parse", "Parse a program and print it canonically");
  parse->add_option("file", file)->required();
  add_common(parse);
  parse->callback([&] { action = [&](Format f) { return cmd_parse(file, common, f, out); }; });

  auto* classify = app.add_subcommand("classify", "Report fragment memberships and violations");
  classify->add_option("file", file)->required();
  classify->add_option("--require", require, "Fail unless the program is in this fragment (e.g. F3)");
  add_common(classify);
  classify->callback([&] { action = [&](Format f) { return cmd_classify(file, common, require, f, out); }; });

  auto* translate = app.add_subcommand("translate", "Translate between LARS_D and LDSR");
  translate->add_option("file", file)->required();
  translate->add_option("--rho", rho, "Translation 1..7")->required()->check(CLI::Range(1, 7));
  add_common(translate);
  translate->callback([&] { action = [&](Format f) { return cmd_translate(file, common, rho, f, out); }; });

  auto* eval = app.add_subcommand("eval", "Evaluate a program under an output profile");
  eval->add_option("file", file)->required();
  add_common(eval);
  add_inputs(eval);
  eval->callback([&] { action = [&](Format f) { return cmd_eval(file, common, inputs, f, out); }; });

  auto* diff = app.add_subcommand("diff", "Compare the outputs of two programs");
  diff->add_option("source", file)->required();
  diff->add_option("target", file2)->required();
  diff->add_flag("--strict", strict, "Compare every predicate, including auxiliary ones");
  add_common(diff);
  add_inputs(diff);
  diff->callback([&] { action = [&](Format f) { return cmd_diff(file, file2, common, inputs, strict, f, out); }; });

  auto* fz = app.add_subcommand("fuzz", "Run a differential campaign");
  fz->add_option("--rho", fuzz.rho, "Translation 1..7")->required()->check(CLI::Range(1, 7));
  fz->add_option("--fragment", fuzz.fragment, "Source fragment (default: the fragment of rho)");
  fz->add_option("--profile", fuzz.profile, "atomic, bound or full (default: the largest backed profile)")
      ->check(CLI::IsMember({"atomic", "bound", "full"}));
  auto* s = fz->add_flag("--strict", fuzz.strict, "Compare every predicate");
  fz->add_flag("--filtered", fuzz.filtered, "Ignore predicates outside the source tuple")->excludes(s);
  fz->add_option("--trials", fuzz.trials, "Number of instances")->check(CLI::PositiveNumber);
  fz->add_option("--seed", fuzz.seed, "First seed");
  fz->add_option("--max-n", fuzz.max_n, "Largest stream end")->check(CLI::Range(0, 64));
  fz->callback([&] { action = [&](Format f) { return cmd_fuzz(fuzz, f, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sreason: " << e.what() << "\n";
    return kUsage;
  }

  const Format fmt = format == "structured" ? Format::Structured : Format::Text;
  try {
    return action(fmt);
  } catch (const UsageError& e) {
    err << "sreason: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "sreason: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace sreason::cli
