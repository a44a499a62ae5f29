// pfkit command-line entry point. Every verification command prints a JSON
// report (or an array of them) on stdout; the exit code is 0 for pass, 1 for
// fail or inconclusive, 2 for errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pfkit/pfkit.hpp"

namespace {

using namespace pfkit;

int print_reports(const std::vector<CheckReport>& reports, bool as_array) {
  if (as_array || reports.size() != 1) {
    std::cout << emit_report(reports, ReportFormat::json);
  } else {
    std::cout << to_json(reports.front()).dump(2) << "\n";
  }
  return exit_code(reports);
}

int print_report(const CheckReport& r) { return print_reports({r}, false); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for the paper-folding subshift"};
  app.require_subcommand(1);
  std::function<int()> action;

  // paperfold ---------------------------------------------------------------
  auto* pf = app.add_subcommand("paperfold", "paper-folding words and their checks");
  pf->require_subcommand(1);

  unsigned gen_n = 0;
  std::string gen_format = "text", gen_out;
  auto* gen = pf->add_subcommand("gen", "print t_n");
  gen->add_option("--n", gen_n, "generation")->required();
  gen->add_option("--format", gen_format, "text or pfw")->check(CLI::IsMember({"text", "pfw"}));
  gen->add_option("--out", gen_out, "output path (stdout if omitted)");
  gen->callback([&] {
    action = [&] {
      Word t = pf_word(gen_n);
      if (gen_format == "pfw") {
        if (gen_out.empty()) {
          write_pfw(std::cout, t);
        } else {
          save_pfw(gen_out, t);
        }
      } else {
        write_output(gen_out, t.str() + "\n");
      }
      return 0;
    };
  });

  unsigned census_gen = 20;
  std::size_t census_len = 8;
  auto* census = pf->add_subcommand("census", "anti-palindrome census");
  census->add_option("--generation", census_gen)->required();
  census->add_option("--max-len", census_len)->required();
  census->callback([&] { action = [&] { return print_report(census_report(census_gen, census_len)); }; });

  auto* pfv = pf->add_subcommand("verify", "paper-folding checks");
  pfv->require_subcommand(1);
  unsigned ss_p = 0, ss_n = 0;
  auto* ss = pfv->add_subcommand("self-similarity", "block decomposition of t_{p+n+1}");
  ss->add_option("--p", ss_p)->required();
  ss->add_option("--n", ss_n)->required();
  ss->callback([&] { action = [&] { return print_report(verify_self_similarity(ss_p, ss_n)); }; });

  unsigned rec_p = 0, rec_gen = 0;
  auto* rec = pfv->add_subcommand("recurrence", "recurrence windows");
  rec->add_option("--p", rec_p)->required();
  rec->add_option("--generation", rec_gen)->required();
  rec->callback([&] { action = [&] { return print_report(verify_recurrence(rec_p, rec_gen)); }; });

  std::size_t ap_period = 0, ap_pre = 0, ap_len = 0;
  auto* ap = pfv->add_subcommand("aperiodic", "no eventual period on a prefix");
  ap->add_option("--max-period", ap_period)->required();
  ap->add_option("--preperiod", ap_pre)->required();
  ap->add_option("--prefix-len", ap_len)->required();
  ap->callback([&] { action = [&] { return print_report(check_aperiodic(ap_len, ap_period, ap_pre)); }; });

  // dihedral ----------------------------------------------------------------
  auto* dh = app.add_subcommand("dihedral", "anti-reversal and the dihedral action");
  dh->require_subcommand(1);

  unsigned fr_gen = 20;
  std::size_t fr_len = 16;
  auto* fr = dh->add_subcommand("freeness", "freeness certificate");
  fr->add_option("--generation", fr_gen)->required();
  fr->add_option("--max-len", fr_len, "longest factor length in the oracle")->capture_default_str();
  fr->callback([&] {
    action = [&] { return print_report(freeness_report(LanguageOracle::paperfolding(fr_gen, fr_len))); };
  });

  std::size_t par_k = 0;
  unsigned par_gen = 0;
  auto* par = dh->add_subcommand("parity", "even/odd window separation");
  par->add_option("--k", par_k)->required();
  par->add_option("--generation", par_gen)->required();
  par->callback([&] { action = [&] { return print_report(parity_class_separation(par_k, par_gen)); }; });

  std::string ext_seed;
  std::size_t ext_steps = 0, ext_horizon = 0;
  unsigned ext_gen = 14;
  auto* ext = dh->add_subcommand("extend", "extend a factor of t to the left");
  ext->add_option("--seed", ext_seed)->required();
  ext->add_option("--steps", ext_steps)->required();
  ext->add_option("--horizon", ext_horizon)->required();
  ext->add_option("--generation", ext_gen, "generation of the language oracle")->capture_default_str();
  ext->callback([&] {
    action = [&] {
      return print_report(left_extension_report(ext_gen, Word::from_string(ext_seed), ext_steps, ext_horizon));
    };
  });

  // subst -------------------------------------------------------------------
  auto* sb = app.add_subcommand("subst", "substitutions and the block code");
  sb->require_subcommand(1);

  std::string rules_path;
  auto* info = sb->add_subcommand("info", "matrix, primitivity and left-properness");
  info->add_option("--rules", rules_path, "substitution JSON (default: the paper-folding substitution)");
  info->callback([&] {
    action = [&] {
      Substitution s = Substitution::paperfolding();
      if (!rules_path.empty()) {
        std::ifstream in(rules_path);
        if (!in) throw FormatError("cannot open " + rules_path);
        s = Substitution::from_json(nlohmann::json::parse(in));
      }
      unsigned k = s.alphabet().size();
      auto prim = is_primitive(s, (k - 1) * (k - 1) + 1);
      auto proper = is_left_proper(s, k);
      Json j{{"substitution", s.to_json()},
             {"abelianization", abelianization(s).to_json()},
             {"primitive", prim ? Json(*prim) : Json(nullptr)},
             {"left_proper", proper ? Json{{"power", proper->power}, {"letter", proper->letter}} : Json(nullptr)}};
      std::cout << j.dump(2) << "\n";
      return 0;
    };
  });

  std::size_t fp_len = 0;
  auto* fp = sb->add_subcommand("fixed-prefix", "prefix of the fixed point");
  fp->add_option("--len", fp_len)->required();
  fp->callback([&] {
    action = [&] {
      std::cout << fixed_prefix(Substitution::paperfolding(), fp_len).str() << "\n";
      return 0;
    };
  });

  auto* sv = sb->add_subcommand("verify", "block code checks");
  sv->require_subcommand(1);
  std::size_t rc_len = 0, it_len = 0;
  auto* rc = sv->add_subcommand("recode", "block code of t against the fixed point");
  rc->add_option("--len", rc_len, "number of quaternary symbols")->required();
  rc->callback([&] { action = [&] { return print_report(verify_recoding(rc_len)); }; });
  auto* it = sv->add_subcommand("intertwine", "block code against the shift");
  it->add_option("--len", it_len, "even prefix length of t")->required();
  it->callback([&] { action = [&] { return print_report(verify_intertwining(it_len)); }; });

  // dimgroup ----------------------------------------------------------------
  auto* dg = app.add_subcommand("dimgroup", "ordered group computations");
  dg->require_subcommand(1);

  unsigned dv_index = 12;
  std::uint64_t dv_samples = 10000, dv_seed = 42;
  auto* dv = dg->add_subcommand("verify", "lattice, cone, involution and torsion checks");
  dv->add_option("--index-max", dv_index)->capture_default_str();
  dv->add_option("--samples", dv_samples)->capture_default_str();
  dv->add_option("--seed", dv_seed)->capture_default_str();
  dv->callback([&] {
    action = [&] {
      std::vector<CheckReport> out;
      out.push_back(verify_matpow());
      out.push_back(verify_lattice(dv_index, dv_samples, dv_seed));
      out.push_back(verify_cone(dv_samples, dv_seed));
      out.push_back(verify_involution(dv_samples, dv_seed));
      out.push_back(verify_torsion(dv_samples, dv_seed));
      return print_reports(out, true);
    };
  });

  unsigned mp_n = 0;
  auto* mp = dg->add_subcommand("matpow", "M^n exactly");
  mp->add_option("--n", mp_n)->required();
  mp->callback([&] {
    action = [&] {
      IntMatrix4 m = mat_pow(substitution_matrix(), mp_n);
      Json j{{"n", mp_n}, {"matrix", m.to_json()}};
      if (mp_n >= 2) j["matches_closed_form"] = m == closed_form_power(mp_n - 2);
      std::cout << j.dump(2) << "\n";
      return 0;
    };
  });

  unsigned disc_n = 20;
  auto* disc = dg->add_subcommand("discrepancy", "Birkhoff discrepancy of t at m_n");
  disc->add_option("--n-max", disc_n)->required();
  disc->callback([&] { action = [&] { return print_report(verify_unbounded_discrepancy(disc_n)); }; });

  // report ------------------------------------------------------------------
  std::string rp_profile = "quick", rp_format = "json", rp_out;
  std::uint64_t rp_seed = 42;
  bool rp_fault = false;
  auto* rp = app.add_subcommand("report", "run the whole suite");
  rp->add_option("--profile", rp_profile)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  rp->add_option("--format", rp_format)->check(CLI::IsMember({"json", "markdown"}))->capture_default_str();
  rp->add_option("--out", rp_out, "output path (stdout if omitted)");
  rp->add_option("--seed", rp_seed)->capture_default_str();
  rp->add_flag("--inject-t4-fault", rp_fault)->group("");
  rp->callback([&] {
    action = [&] {
      SuiteOptions o{Profile::by_name(rp_profile), rp_seed, rp_fault};
      auto reports = run_all(o);
      write_output(rp_out, emit_report(reports, rp_format == "markdown" ? ReportFormat::markdown : ReportFormat::json));
      return exit_code(reports);
    };
  });

  CLI11_PARSE(app, argc, argv);
  try {
    return action ? action() : 0;
  } catch (const std::exception& e) {
    CheckReport r;
    r.check = "cli";
    r.status = Status::error;
    r.reason = e.what();
    std::cout << to_json(r).dump(2) << "\n";
    return 2;
  }
}
