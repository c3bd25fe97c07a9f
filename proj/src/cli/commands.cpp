#include "tmlab/commands.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmlab/cnf.hpp"
#include "tmlab/codec.hpp"
#include "tmlab/errors.hpp"
#include "tmlab/report.hpp"
#include "tmlab/sat.hpp"
#include "tmlab/suites.hpp"

namespace tmlab {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  double fuel_factor = 1.0;
  std::string report_path;
  std::string format = "json";
};

std::string read_input(const std::string& path) {
  std::ostringstream s;
  if (path == "-") {
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

std::uint64_t scaled_fuel(std::uint64_t base, double factor) {
  const long double f = static_cast<long double>(base) * factor;
  return f < 1 ? 1 : static_cast<std::uint64_t>(std::min<long double>(f, 1.8e19L));
}

// Encoded bits when the text holds only 0/1 and whitespace.
std::optional<std::string> as_bits(const std::string& text) {
  std::string bits;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c != '0' && c != '1') return std::nullopt;
    bits.push_back(c);
  }
  if (bits.empty()) return std::nullopt;
  return bits;
}

CnfFormula read_formula(const std::string& text) {
  if (auto bits = as_bits(text)) return decode(*bits);
  return parse_dimacs(std::string_view(text));
}

std::string assignment_line(const std::vector<bool>& a) {
  std::string s = "v";
  for (std::size_t i = 0; i < a.size(); ++i) s += " " + std::string(a[i] ? "" : "-") + std::to_string(i + 1);
  return s + " 0\n";
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int main(int argc, const char* const* argv) {
    CLI::App app{"Multitape Turing machine lab: sorting, SAT verification, projections"};
    app.require_subcommand(1);
    app.add_option("--seed", g_.seed, "Random seed")->envname("TMLAB_SEED");
    app.add_option("--fuel-factor", g_.fuel_factor, "Multiplier on the default step fuel")
        ->envname("TMLAB_FUEL_FACTOR")
        ->check(CLI::PositiveNumber);
    app.add_option("--report", g_.report_path, "Report file ('-' for stdout)")->envname("TMLAB_REPORT");
    app.add_option("--format", g_.format, "Report format")
        ->envname("TMLAB_FORMAT")
        ->check(CLI::IsMember({"json", "csv"}));

    int status = kExitOk;

    std::string sort_file, sort_out;
    std::optional<std::size_t> sort_width;
    std::size_t compare_bits = 0;
    CLI::App* sort = app.add_subcommand("sort", "Sort a key file on the machine");
    sort->add_option("file", sort_file, "Key file ('-' for stdin)")->required();
    sort->add_option("--width", sort_width, "Key width in bits");
    sort->add_option("--compare-bits", compare_bits, "Compare on the top bits only");
    sort->add_option("-o,--output", sort_out, "Write sorted keys here");
    sort->callback([&] { status = cmd_sort(sort_file, sort_width, compare_bits, sort_out); });

    std::string sat_file;
    CLI::App* sat = app.add_subcommand("sat", "Decide a DIMACS or encoded formula");
    sat->add_option("file", sat_file, "Input file ('-' for stdin)")->required();
    sat->callback([&] { status = cmd_sat(sat_file); });

    std::string bench_suite;
    std::size_t m_lo = 8, m_hi = 1024;
    std::vector<std::size_t> widths{8, 16, 32};
    SatSweepOptions sweep;
    double threshold = 4.0;
    bool serial = false;
    CLI::App* bench = app.add_subcommand("bench", "Fit a step-bound constant over a grid");
    bench->add_option("suite", bench_suite, "sort or sat")->required()->check(CLI::IsMember({"sort", "sat"}));
    bench->add_option("--m-lo", m_lo, "Smallest record count (power of two)");
    bench->add_option("--m-hi", m_hi, "Largest record count (power of two)");
    bench->add_option("--widths", widths, "Key widths")->delimiter(',');
    bench->add_option("--n-lo", sweep.n_lo, "Smallest target encoding length");
    bench->add_option("--n-hi", sweep.n_hi, "Largest target encoding length");
    bench->add_option("--instances", sweep.instances, "Instances per target length");
    bench->add_option("--extra-guesses", sweep.extra_guesses, "Random guesses per instance");
    bench->add_option("--threshold", threshold, "Largest accepted max/min ratio");
    bench->add_flag("--serial", serial, "Run the grid points one at a time");
    bench->callback([&] {
      status = bench_suite == "sort" ? cmd_bench_sort(m_lo, m_hi, widths, threshold, serial)
                                     : cmd_bench_sat(sweep, threshold, serial);
    });

    std::vector<std::string> only;
    std::string inject;
    bool list = false;
    CLI::App* verify = app.add_subcommand("verify", "Run the verification suites");
    verify->add_option("--only", only, "Suites to run")->delimiter(',');
    verify->add_option("--inject", inject, "Fault to inject")->check(CLI::IsMember({"flip-compare"}));
    verify->add_flag("--list", list, "List the suites and exit");
    verify->callback([&] { status = cmd_verify(only, inject, list); });

    std::string enc_file, enc_out;
    bool enc_dump = false;
    CLI::App* encode_cmd = app.add_subcommand("encode", "DIMACS to encoded bits");
    encode_cmd->add_option("file", enc_file, "DIMACS file ('-' for stdin)")->required();
    encode_cmd->add_flag("--encoding-dump", enc_dump, "Print the field-by-field layout instead");
    encode_cmd->add_option("-o,--output", enc_out, "Output file");
    encode_cmd->callback([&] { status = cmd_encode(enc_file, enc_dump, enc_out); });

    std::string dec_file, dec_out;
    bool dec_dump = false;
    CLI::App* decode_cmd = app.add_subcommand("decode", "Encoded bits to DIMACS");
    decode_cmd->add_option("file", dec_file, "Bits file ('-' for stdin)")->required();
    decode_cmd->add_flag("--encoding-dump", dec_dump, "Print the field-by-field layout instead");
    decode_cmd->add_option("-o,--output", dec_out, "Output file");
    decode_cmd->callback([&] { status = cmd_decode(dec_file, dec_dump, dec_out); });

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      app.exit(e, out_, err_);
      return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
      app.exit(e, out_, err_);
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err_);
      return kExitError;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitError;
    }
    try {
      flush_report();
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kExitError;
    }
    return status;
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
  Report report_;

  void flush_report() {
    if (g_.report_path.empty()) return;
    std::ostringstream s;
    report_.write(s, *parse_report_format(g_.format));
    write_output(g_.report_path, s.str(), out_);
  }

  int cmd_sort(const std::string& file, std::optional<std::size_t> width, std::size_t compare_bits,
               const std::string& output) {
    std::istringstream in(read_input(file));
    KeyList keys = read_key_file(in, width);
    if (keys.keys.empty()) throw ParseError("key file holds no keys");
    const std::uint64_t fuel = scaled_fuel(default_sort_fuel(keys.keys.size(), keys.width), g_.fuel_factor);
    SortOptions opt;
    opt.compare_bits = compare_bits;

    RunRecord rec;
    rec.command = "sort";
    rec.parameters = {{"file", file}, {"m", keys.keys.size()}, {"width", keys.width},
                      {"compare_bits", compare_bits}, {"fuel", fuel}};
    SortRun run;
    try {
      run = tm_sort(keys, fuel, opt);
    } catch (const FuelExhausted& e) {
      rec.details["error"] = e.what();
      report_.add(std::move(rec));
      err_ << "error: " << e.what() << '\n';
      return kExitIndeterminate;
    }
    const std::size_t padded = std::bit_ceil(keys.keys.size());
    rec.parameters["padded_m"] = padded;
    rec.stats = run.stats;
    if (padded > 1)
      rec.add_ratio("steps/(m lg m width)", static_cast<double>(run.stats.steps),
                    static_cast<double>(padded) * static_cast<double>(floor_log2(padded)) *
                        static_cast<double>(keys.width));
    Json stages = Json::array();
    for (const StageReport& s : run.stages)
      stages.push_back({{"stage", s.stage_index},
                        {"sublist_length", s.sublist_length},
                        {"steps", s.steps},
                        {"reversals", {s.result_reversals, s.source_reversals, s.target_reversals}}});
    rec.details["stage_count"] = run.stages.size();
    rec.details["stages"] = std::move(stages);
    report_.add(std::move(rec));

    std::string text;
    for (std::uint64_t k : run.sorted.keys) text += std::to_string(k) + "\n";
    write_output(output, text, out_);
    return kExitOk;
  }

  int cmd_sat(const std::string& file) {
    CnfFormula f = read_formula(read_input(file));
    const std::size_t n = encode(f).n();
    const std::uint64_t fuel = scaled_fuel(default_sat_fuel(n), g_.fuel_factor);
    SatDecision d = decide_sat_tm(f, fuel);

    RunRecord rec;
    rec.command = "sat";
    rec.parameters = {{"file", file}, {"n", n}, {"v", f.variable_count},
                      {"clauses", f.clauses.size()}, {"fuel", fuel}};
    rec.stats = d.stats;
    rec.add_ratio("steps/(n lg n)", static_cast<double>(d.stats.steps),
                  static_cast<double>(n) * std::log2(static_cast<double>(n)));
    rec.details["verdict"] = std::string(to_string(d.verdict));
    rec.details["branches"] = d.branches;
    rec.details["guess_bits"] = d.stats.guess_bits;
    if (d.assignment) {
      Json a = Json::array();
      for (bool b : *d.assignment) a.push_back(b ? 1 : 0);
      rec.details["assignment"] = std::move(a);
    }
    report_.add(std::move(rec));

    switch (d.verdict) {
      case Verdict::Accept:
        out_ << "s SATISFIABLE\n" << assignment_line(*d.assignment);
        return kExitSat;
      case Verdict::Reject:
        out_ << "s UNSATISFIABLE\n";
        return kExitUnsat;
      case Verdict::Indeterminate:
        break;
    }
    out_ << "s UNKNOWN\n";
    return kExitIndeterminate;
  }

  int finish_fit(RunRecord rec, const FitResult& fit, double threshold) {
    const bool within = fit.spread() <= threshold;
    rec.parameters["threshold"] = threshold;
    rec.details["published"] = fit.points.size() >= 3;
    rec.details["within_threshold"] = within;
    rec.derived_ratios.emplace_back("C", fit.max_ratio);
    rec.derived_ratios.emplace_back("spread", fit.spread());
    out_ << rec.command << " " << fit.model_label << ": C=" << fit.max_ratio << " min=" << fit.min_ratio
         << " spread=" << fit.spread() << " points=" << fit.points.size()
         << (within ? "" : " (spread above threshold)") << '\n';
    report_.add_fit(std::move(rec), fit);
    return within ? kExitOk : kExitError;
  }

  int cmd_bench_sort(std::size_t m_lo, std::size_t m_hi, const std::vector<std::size_t>& widths,
                     double threshold, bool serial) {
    if (m_lo < 2 || m_hi < m_lo || widths.empty()) throw std::invalid_argument("empty sort grid");
    std::vector<std::pair<std::size_t, std::size_t>> grid;
    for (std::size_t m = m_lo; m <= m_hi; m *= 2)
      for (std::size_t w : widths) grid.emplace_back(m, w);
    FitResult fit = serial ? verify_step_bound_serial(grid, g_.seed) : verify_step_bound(grid, g_.seed);
    RunRecord rec;
    rec.command = "bench-sort";
    rec.parameters = {{"seed", g_.seed}, {"m_lo", m_lo}, {"m_hi", m_hi}, {"widths", widths}};
    return finish_fit(std::move(rec), fit, threshold);
  }

  int cmd_bench_sat(SatSweepOptions sweep, double threshold, bool serial) {
    sweep.seed = g_.seed;
    SatSweep s = serial ? sat_step_sweep_serial(sweep) : sat_step_sweep(sweep);
    RunRecord rec;
    rec.command = "bench-sat";
    rec.parameters = {{"seed", sweep.seed},
                      {"n_lo", sweep.n_lo},
                      {"n_hi", sweep.n_hi},
                      {"instances", sweep.instances},
                      {"extra_guesses", sweep.extra_guesses}};
    Json budget = Json::array();
    for (const SatSweepPoint& p : s.points)
      budget.push_back({{"n", p.n}, {"v", p.v}, {"guess_bits", p.guess_bits}, {"bound", p.budget.bound},
                        {"asserted", p.budget.asserted}, {"ok", p.budget.ok}});
    rec.details["budget"] = std::move(budget);
    return finish_fit(std::move(rec), s.fit, threshold);
  }

  int cmd_verify(const std::vector<std::string>& only, const std::string& inject, bool list) {
    if (list) {
      for (const Suite& s : verification_suites()) out_ << s.name << "\t" << s.title << '\n';
      return kExitOk;
    }
    std::vector<const Suite*> chosen;
    if (only.empty()) {
      for (const Suite& s : verification_suites()) chosen.push_back(&s);
    } else {
      for (const std::string& name : only) chosen.push_back(&find_suite(name));
    }
    SuiteOptions opt;
    opt.seed = g_.seed;
    opt.sort.flip_compare = inject == "flip-compare";
    bool all = true;
    for (const Suite* s : chosen) {
      SuiteResult r = run_suite(*s, opt);
      all = all && r.passed;
      out_ << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << std::round(r.seconds * 10) / 10
           << " s): " << r.summary << '\n';
      if (!r.passed) out_ << "  reproduce: " << r.reproducer << '\n';
      RunRecord rec;
      rec.command = "verify";
      rec.parameters = {{"suite", r.name}, {"seed", opt.seed}, {"inject", inject}};
      rec.details = {{"passed", r.passed}, {"summary", r.summary}, {"metrics", r.metrics}};
      if (!r.passed) rec.details["reproducer"] = r.reproducer;
      report_.add(std::move(rec));
    }
    return all ? kExitOk : kExitError;
  }

  int cmd_encode(const std::string& file, bool dump, const std::string& output) {
    CnfFormula f = parse_dimacs(std::string_view(read_input(file)));
    write_output(output, dump ? encoding_dump(f) + "\n" : encode(f).bits + "\n", out_);
    return kExitOk;
  }

  int cmd_decode(const std::string& file, bool dump, const std::string& output) {
    const std::string text = read_input(file);
    std::optional<std::string> bits = as_bits(text);
    if (!bits) throw ParseError("input is not a bit string");
    CnfFormula f = decode(*bits);
    write_output(output, dump ? encoding_dump(f) + "\n" : emit_dimacs(f), out_);
    return kExitOk;
  }
};

}  // namespace

KeyList read_key_file(std::istream& in, std::optional<std::size_t> width) {
  KeyList keys;
  std::string line;
  std::size_t line_no = 0;
  std::uint64_t largest = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      if (!std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; }) || w.size() > 19)
        throw ParseError("line " + std::to_string(line_no) + ": '" + w + "' is not a key");
      const std::uint64_t k = std::stoull(w);
      largest = std::max(largest, k);
      keys.keys.push_back(k);
    }
  }
  keys.width = width.value_or(std::max<std::size_t>(1, std::bit_width(largest)));
  try {
    keys.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return keys;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return Cli(out, err).main(argc, argv);
}

}  // namespace tmlab
