// Copyright 2026 The smod Authors
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

#include "smod/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "smod/serialize.hpp"

namespace smod {

namespace {

struct Options {
  double psd_tol = 0;
  double rank_tol = 0;
  double residual_tol = 0;
  CLI::Option* psd = nullptr;
  CLI::Option* rank = nullptr;
  CLI::Option* residual = nullptr;
  std::string format = "json";
  std::vector<std::string> files;
  std::string output;

  // generate
  std::string kind;
  std::string family;
  std::uint64_t seed = 0;
  int size = 1;
};

Tolerances effective(const Options& o, const InstanceFile& inst) {
  Tolerances tol = inst.tolerances.value_or(Tolerances{});
  if (o.psd->count()) tol.psd_tol = o.psd_tol;
  if (o.rank->count()) tol.rank_tol = o.rank_tol;
  if (o.residual->count()) tol.residual_tol = o.residual_tol;
  tol.validate();
  return tol;
}

Json blocks(const BlockAlgebra& a) { return a.block_dims(); }

Json dims_of(const InstanceFile& inst) {
  Json d = Json::object();
  if (inst.tau) {
    const ConcreteModule& e1 = *inst.tau->carrier.module();
    d["algebra_blocks"] = blocks(inst.tau->domain);
    d["algebra_dim"] = inst.tau->domain.dim();
    d["carrier_algebra_blocks"] = blocks(e1.algebra());
    d["carrier_rows"] = e1.ambient_rows();
    d["carrier_dim"] = e1.dim();
  }
  if (inst.kind == InstanceKind::TauMap) {
    d["e_dim"] = inst.e->dim();
    d["target_rows"] = inst.target->module()->ambient_rows();
    d["target_dim"] = inst.target->module()->dim();
  }
  if (inst.kernel) {
    d["omega"] = inst.kernel->size();
    d["source_blocks"] = blocks(inst.kernel->source);
    d["source_dim"] = inst.kernel->source.dim();
    d["target_blocks"] = blocks(inst.kernel->target);
  }
  if (inst.family) {
    d["e_dim"] = inst.family->e->dim();
    d["f_dim"] = inst.family->f->dim();
  }
  return d;
}

Json certificate(const std::string& command, const InstanceFile& inst, const Tolerances& tol, const Report& rep) {
  Json c = to_json(rep);
  c["command"] = command;
  c["instance_kind"] = to_string(inst.kind);
  c["instance_digest"] = instance_digest(inst);
  c["tolerances"] = to_json(tol);
  c["dims"] = dims_of(inst);
  c["tool_version"] = SMOD_VERSION;
  c["verdict"] = rep.pass() ? "pass" : "fail";
  if (!rep.checks().empty()) c["worst"] = rep.worst();
  if (inst.generator) c["seed"] = inst.generator->seed;
  return c;
}

// A well-formed instance whose construction stops on a mathematical
// obstruction still gets a (failing) certificate.
Json failure_certificate(const std::string& command, const InstanceFile& inst, const Tolerances& tol,
                         const Report& rep, const Error& err) {
  Json c = certificate(command, inst, tol, rep);
  c["verdict"] = "fail";
  c["error"] = Json{{"kind", to_string(err.kind())}, {"message", err.what()}, {"value", real_to_json(err.value())}};
  return c;
}

void require_kind(const InstanceFile& inst, std::initializer_list<InstanceKind> allowed, const std::string& command) {
  for (InstanceKind k : allowed) {
    if (inst.kind == k) return;
  }
  throw Error(ErrorKind::InvalidArgument, command + " does not accept '" + to_string(inst.kind) + "' instances");
}

Json verify_alphacp_cmd(const InstanceFile& inst, const Tolerances& tol) {
  require_kind(inst, {InstanceKind::AlphaCp, InstanceKind::TauMap}, "verify-alphacp");
  const AlphaCpCertificate cp = verify_alpha_cp(*inst.tau, *inst.alpha, tol);
  Json c = certificate("verify-alphacp", inst, tol, cp.report);
  Json table = Json::array();
  for (double m : cp.domination_table) table.push_back(real_to_json(m));
  c["domination_table"] = table;
  return c;
}

Json dilate_cmd(const InstanceFile& inst, const Tolerances& tol) {
  require_kind(inst, {InstanceKind::AlphaCp, InstanceKind::TauMap}, "dilate");
  Report rep;
  rep.absorb("alphacp", verify_alpha_cp(*inst.tau, *inst.alpha, tol).report);
  try {
    const KsgnsDilation d = construct_ksgns(*inst.tau, *inst.alpha, tol);
    rep.absorb("ksgns", d.certificate);
    Json c = certificate("dilate", inst, tol, rep);
    c["dilation"] = dilation_to_json(d);
    return c;
  } catch (const Error& err) {
    if (is_input_error(err.kind())) throw;
    return failure_certificate("dilate", inst, tol, rep, err);
  }
}

Json factorize_taumap_cmd(const InstanceFile& inst, const Tolerances& tol) {
  require_kind(inst, {InstanceKind::TauMap}, "factorize-taumap");
  Report rep;
  rep.absorb("alphacp", verify_alpha_cp(*inst.tau, *inst.alpha, tol).report);
  std::optional<KsgnsDilation> d;
  try {
    d = construct_ksgns(*inst.tau, *inst.alpha, tol);
    rep.absorb("ksgns", d->certificate);
    const TauMapFactorization f =
        factorize_tau_map(inst.t_on_basis, *inst.e, *inst.target, *inst.tau, *inst.alpha, *d, tol);
    rep.absorb("factorization", f.certificate);
    Json c = certificate("factorize-taumap", inst, tol, rep);
    c["dilation"] = dilation_to_json(*d);
    c["factorization"] = factorization_to_json(f);
    return c;
  } catch (const Error& err) {
    if (is_input_error(err.kind())) throw;
    Json c = failure_certificate("factorize-taumap", inst, tol, rep, err);
    if (d) c["dilation"] = dilation_to_json(*d);
    return c;
  }
}

Json verify_cpd_cmd(const InstanceFile& inst, const Tolerances& tol) {
  require_kind(inst, {InstanceKind::Kernel, InstanceKind::KFamily}, "verify-cpd");
  Report rep;
  try {
    const CpdCertificate cpd = verify_alpha_cpd(*inst.kernel, *inst.alpha, tol);
    rep = cpd.report;
    if (inst.family) rep.absorb("kfamily", verify_kfamily(*inst.family, tol));
    Json c = certificate("verify-cpd", inst, tol, rep);
    Json table = Json::array();
    for (double m : cpd.domination_table) table.push_back(real_to_json(m));
    c["domination_table"] = table;
    return c;
  } catch (const Error& err) {
    if (is_input_error(err.kind())) throw;
    return failure_certificate("verify-cpd", inst, tol, rep, err);
  }
}

Json factorize_kernel_cmd(const InstanceFile& inst, const Tolerances& tol) {
  require_kind(inst, {InstanceKind::Kernel, InstanceKind::KFamily}, "factorize-kernel");
  Report rep;
  try {
    const RksCorrespondence c = construct_correspondence(*inst.kernel, *inst.alpha, tol);
    rep.absorb("correspondence", c.certificate);
    const Kernel again = rederive_kernel(c, *inst.kernel);
    double diff = 0;
    for (std::size_t i = 0; i < again.values.size(); ++i) {
      diff = std::max(diff, (again.values[i] - inst.kernel->values[i]).norm());
    }
    rep.require_at_most("rederived_kernel_difference", diff, tol.residual_tol);
    if (inst.family) {
      rep.absorb("family", verify_kfamily_factorization(*inst.family, c, *inst.alpha, tol));
      if (inst.alpha->is_identity()) rep.absorb("nu", nu_isometry_check(*inst.family, c, *inst.alpha, tol));
    }
    Json out = certificate("factorize-kernel", inst, tol, rep);
    out["correspondence"] = correspondence_to_json(c);
    return out;
  } catch (const Error& err) {
    if (is_input_error(err.kind())) throw;
    return failure_certificate("factorize-kernel", inst, tol, rep, err);
  }
}

InstanceFile generate_file(const Options& o) {
  const InstanceKind kind = parse_instance_kind(o.kind);
  const Family family = parse_family(o.family);
  InstanceFile inst;
  inst.kind = kind;
  GeneratorInfo info{o.family, o.seed, o.size, "", true};

  if (kind == InstanceKind::AlphaCp || kind == InstanceKind::TauMap) {
    const InstanceSizes sizes = InstanceSizes::level(o.size);
    if (kind == InstanceKind::AlphaCp) {
      AlphaCpInstance a = generate_instance(family, sizes, o.seed);
      info.label = a.label;
      info.expected_pass = a.expected_pass;
      inst.tau = std::move(a.tau);
      inst.alpha = std::move(a.alpha);
    } else {
      TauMapInstance t = generate_taumap_instance(family, sizes, o.seed);
      info.label = t.base.label;
      info.expected_pass = t.base.expected_pass;
      inst.tau = std::move(t.base.tau);
      inst.alpha = std::move(t.base.alpha);
      inst.e = std::move(t.e);
      inst.target = std::move(t.target);
      inst.t_on_basis = std::move(t.t_on_basis);
    }
  } else {
    KernelSizes sizes = KernelSizes::level(o.size);
    if (family == Family::F2) sizes.second_block = std::max<Index>(sizes.second_block, 2);
    KernelInstance k = generate_kernel_instance(family, sizes, o.seed);
    if (kind == InstanceKind::KFamily) {
      if (!k.family) throw Error(ErrorKind::InvalidArgument, "family " + o.family + " has no 𝔎-family");
      inst.e = k.family->e;
      inst.family = std::move(k.family);
    }
    info.label = k.label;
    info.expected_pass = k.expected_pass;
    inst.kernel = std::move(k.kernel);
    inst.alpha = std::move(k.alpha);
  }
  inst.generator = info;
  return inst;
}

// Human-readable rendering of a certificate.
int render_report(const Json& c, std::ostream& out, bool color) {
  auto paint = [&](const std::string& text, const char* code) {
    return color ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
  };
  auto text = [&](const char* key) -> std::string {
    auto it = c.find(key);
    return it != c.end() && it->is_string() ? it->get<std::string>() : "?";
  };
  auto number = [](const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    std::ostringstream s;
    s << std::setprecision(6) << v.get<double>();
    return s.str();
  };
  if (!c.is_object() || !c.contains("verdict") || !c.contains("residual_table")) {
    throw Error(ErrorKind::SchemaError, "$: not a certificate");
  }
  const bool pass = text("verdict") == "pass";
  out << "command   " << text("command") << "\n";
  out << "instance  " << text("instance_kind") << " " << text("instance_digest") << "\n";
  if (c.contains("seed")) out << "seed      " << c["seed"].dump() << "\n";
  out << "verdict   " << (pass ? paint("PASS", "32") : paint("FAIL", "31")) << "\n";
  if (c.contains("worst")) {
    const std::string worst = c["worst"].get<std::string>();
    out << "worst     " << worst << " = " << number(c["residual_table"].value(worst, Json("?"))) << "\n";
  }
  if (c.contains("error")) out << "error     " << c["error"].value("message", "") << "\n";

  const Json& table = c["residual_table"];
  const Json limits = c.value("limits", Json::object());
  std::size_t width = 0;
  for (const auto& [name, v] : table.items()) width = std::max(width, name.size());
  out << "residuals\n";
  for (const auto& [name, v] : table.items()) {
    out << "  " << std::left << std::setw(int(width)) << name << "  " << std::setw(14) << number(v);
    if (limits.contains(name)) {
      const Json& l = limits[name];
      const bool upper = l.value("bound", "upper") == "upper";
      const double value = real_from_json(v, name);
      const double limit = real_from_json(l["limit"], name);
      const bool ok = !std::isnan(value) && (upper ? value <= limit : value >= limit);
      out << (upper ? "<= " : ">= ") << std::setw(12) << number(l["limit"]) << " "
          << (ok ? paint("ok", "32") : paint("FAIL", "31"));
    }
    out << "\n";
  }
  return pass ? kExitPass : kExitFail;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text << std::flush;
  } else {
    write_text(path, text);
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification and construction of α-CP maps, KSGNS dilations and α-CPD kernels on S-modules.", "smod"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(SMOD_VERSION));
  Options o;
  o.psd = app.add_option("--psd-tol", o.psd_tol, "PSD tolerance, relative to the certificate scale");
  o.rank = app.add_option("--rank-tol", o.rank_tol, "relative rank cutoff for Gram quotients");
  o.residual = app.add_option("--residual-tol", o.residual_tol, "limit for identity residuals");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json"}));

  auto file_command = [&](const char* name, const char* help, bool with_output) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("FILE", o.files, "instance files")->required();
    if (with_output) sub->add_option("-o,--output", o.output, "certificate path (default: standard output)");
    return sub;
  };
  CLI::App* verify = file_command("verify-alphacp", "verify the α-CP conditions", true);
  CLI::App* dilate = file_command("dilate", "build and certify the KSGNS dilation", true);
  CLI::App* taumap = file_command("factorize-taumap", "factor a τ-map through the dilation", true);
  CLI::App* cpd = file_command("verify-cpd", "verify the α-CPD conditions of a kernel", true);
  CLI::App* kernel = file_command("factorize-kernel", "build the reproducing kernel S-correspondence", true);
  CLI::App* report = app.add_subcommand("report", "render a certificate for humans");
  report->fallthrough();
  report->add_option("FILE", o.files, "certificate files")->required();
  CLI::App* generate = app.add_subcommand("generate", "write a seeded instance");
  generate->fallthrough();
  generate->add_option("--kind", o.kind, "alphacp, taumap, kernel or kfamily")->required();
  generate->add_option("--family", o.family, "F1, F2 or F3")->required();
  generate->add_option("--seed", o.seed, "generator seed")->required();
  generate->add_option("--size", o.size, "size level, 1 and up");
  generate->add_option("-o,--output", o.output, "instance path (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (o.files.size() > 1 && !o.output.empty()) {
      throw Error(ErrorKind::InvalidArgument, "-o takes a single FILE");
    }
    if (generate->parsed()) {
      emit(o.output, canonical_text(instance_to_json(generate_file(o))), out);
      return kExitPass;
    }
  } catch (const Error& e) {
    err << "smod: " << e.what() << "\n";
    return kExitInput;
  }

  int worst = kExitPass;
  for (const std::string& path : o.files) {
    int code = kExitPass;
    try {
      if (report->parsed()) {
        const char* no_color = std::getenv("NO_COLOR");
        const bool color = (no_color == nullptr || *no_color == '\0') && &out == &std::cout && isatty(1);
        code = render_report(parse_json(read_file(path)), out, color);
      } else {
        const InstanceFile inst = load_instance(path);
        const Tolerances tol = effective(o, inst);
        Json c;
        if (verify->parsed()) c = verify_alphacp_cmd(inst, tol);
        if (dilate->parsed()) c = dilate_cmd(inst, tol);
        if (taumap->parsed()) c = factorize_taumap_cmd(inst, tol);
        if (cpd->parsed()) c = verify_cpd_cmd(inst, tol);
        if (kernel->parsed()) c = factorize_kernel_cmd(inst, tol);
        emit(o.output, canonical_text(c), out);
        code = c["verdict"] == "pass" ? kExitPass : kExitFail;
        if (code != kExitPass) {
          err << "smod: " << path << ": fail (" << c.value("worst", std::string("error")) << ")\n";
        }
      }
    } catch (const Error& e) {
      err << "smod: " << path << ": " << e.what() << "\n";
      code = is_input_error(e.kind()) ? kExitInput : kExitFail;
    } catch (const std::exception& e) {
      err << "smod: " << path << ": " << e.what() << "\n";
      code = kExitInput;
    }
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace smod
