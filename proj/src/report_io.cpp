#include "wsim/report_io.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

namespace wsim {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out;
}

// Minimal writer with a fixed emission order; comma and indent handling
// only, no general document model.
class JsonWriter {
  public:
    std::string str() const { return out_; }

    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(const std::string& k) {
        separate();
        out_ += '"';
        out_ += json_escape(k);
        out_ += "\": ";
        pending_value_ = true;
    }

    void number(double v) { raw(format_double(v)); }
    void number(std::uint64_t v) { raw(std::to_string(v)); }
    void number(int v) { raw(std::to_string(v)); }
    void string(const std::string& s) { raw('"' + json_escape(s) + '"'); }
    void null() { raw("null"); }

  private:
    void open(char c) {
        separate();
        out_ += c;
        ++depth_;
        first_ = true;
    }

    void close(char c) {
        --depth_;
        if (!first_) {
            out_ += '\n';
            indent();
        }
        out_ += c;
        first_ = false;
    }

    void raw(const std::string& v) {
        separate();
        out_ += v;
    }

    void separate() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!first_) {
            out_ += ',';
        }
        if (depth_ > 0) {
            out_ += '\n';
            indent();
        }
        first_ = false;
    }

    void indent() { out_.append(2 * static_cast<std::size_t>(depth_), ' '); }

    std::string out_;
    int depth_ = 0;
    bool first_ = true;
    bool pending_value_ = false;
};

void write_params(JsonWriter& w, const ChannelParams& p, const InputState& s) {
    w.key("params");
    w.begin_object();
    w.key("a");
    w.number(p.a());
    w.key("b");
    w.number(p.b());
    w.key("c");
    w.number(p.c());
    w.key("alpha");
    w.begin_object();
    w.key("re");
    w.number(s.alpha().real());
    w.key("im");
    w.number(s.alpha().imag());
    w.end_object();
    w.key("beta");
    w.begin_object();
    w.key("re");
    w.number(s.beta().real());
    w.key("im");
    w.number(s.beta().imag());
    w.end_object();
    w.end_object();
}

void write_povm_validation(JsonWriter& w, const PovmValidation& v) {
    w.begin_object();
    w.key("completeness_residual");
    w.number(v.completeness_residual);
    w.key("min_eigenvalue");
    w.number(v.min_eigenvalue);
    w.key("unambiguity_residual");
    w.number(v.unambiguity_residual);
    w.key("conclusive_probability");
    w.number(v.conclusive_probability);
    w.end_object();
}

void write_report_body(JsonWriter& w, const ProtocolReport& r) {
    w.begin_object();
    write_params(w, r.params, r.input);
    w.key("p_success_exact");
    w.number(r.p_success_exact);
    w.key("p_success_formula");
    w.number(r.p_success_formula);
    w.key("p_fail_vonneumann");
    w.number(r.p_fail_vn_exact);
    w.key("p_fail_inconclusive");
    w.number(r.p_fail_inconclusive_exact);
    w.key("min_success_fidelity");
    w.number(r.min_success_fidelity);

    w.key("branches");
    w.begin_array();
    for (const auto& row : r.branches.rows) {
        w.begin_object();
        w.key("bell_family");
        w.string(row.outcomes.bell.family == BellFamily::Phi ? "Phi" : "Psi");
        w.key("bell_sign");
        w.string(row.outcomes.bell.sign == BellSign::Plus ? "+" : "-");
        w.key("vonneumann");
        w.number(row.outcomes.vonneumann);
        w.key("povm");
        if (row.outcomes.povm) {
            w.string(to_string(*row.outcomes.povm));
        } else {
            w.null();
        }
        w.key("probability");
        w.number(row.probability);
        w.key("classification");
        w.string(to_string(row.classification));
        w.key("fidelity");
        if (row.fidelity) {
            w.number(*row.fidelity);
        } else {
            w.null();
        }
        w.end_object();
    }
    w.end_array();

    w.key("povm");
    w.begin_object();
    w.key("set_a");
    write_povm_validation(w, r.povm_a);
    w.key("set_b");
    write_povm_validation(w, r.povm_b);
    w.end_object();

    if (r.mc) {
        w.key("mc");
        w.begin_object();
        w.key("trials");
        w.number(r.mc->trials);
        w.key("seed");
        w.number(r.mc->seed);
        w.key("successes");
        w.number(r.mc->successes);
        w.key("p_hat");
        w.number(r.mc->p_hat);
        w.key("std_err");
        w.number(r.mc->std_err);
        w.end_object();
    }
    w.end_object();
}

std::string csv_branch_rows(const ProtocolReport& r) {
    std::string out = "bell_family,bell_sign,vonneumann,povm,probability,classification,"
                      "fidelity\n";
    for (const auto& row : r.branches.rows) {
        out += row.outcomes.bell.family == BellFamily::Phi ? "Phi," : "Psi,";
        out += row.outcomes.bell.sign == BellSign::Plus ? "+," : "-,";
        out += std::to_string(row.outcomes.vonneumann);
        out += ',';
        if (row.outcomes.povm) {
            out += to_string(*row.outcomes.povm);
        }
        out += ',';
        out += format_double(row.probability);
        out += ',';
        out += to_string(row.classification);
        out += ',';
        if (row.fidelity) {
            out += format_double(*row.fidelity);
        }
        out += '\n';
    }
    return out;
}

const char* kReset = "\033[0m";
const char* kGreen = "\033[32m";
const char* kRed = "\033[31m";

std::string pass_tag(bool passed, bool color) {
    if (!color) {
        return passed ? "[PASS]" : "[FAIL]";
    }
    return std::string(passed ? kGreen : kRed) + (passed ? "[PASS]" : "[FAIL]") + kReset;
}

std::string summarize_params(const ChannelParams& p, const InputState& s) {
    std::ostringstream os;
    os << "channel  a=" << format_double(p.a()) << "  b=" << format_double(p.b())
       << "  c=" << format_double(p.c()) << "\n"
       << "input    alpha=(" << format_double(s.alpha().real()) << ", "
       << format_double(s.alpha().imag()) << "i)  beta=(" << format_double(s.beta().real())
       << ", " << format_double(s.beta().imag()) << "i)\n";
    return os.str();
}

void append_povm_lines(std::ostringstream& os, const char* name, const PovmValidation& v) {
    os << name << ": completeness=" << format_double(v.completeness_residual)
       << "  min_eigenvalue=" << format_double(v.min_eigenvalue)
       << "  unambiguity=" << format_double(v.unambiguity_residual)
       << "  conclusive_probability=" << format_double(v.conclusive_probability) << "\n";
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string report_json(const ProtocolReport& r) {
    JsonWriter w;
    write_report_body(w, r);
    return w.str() + "\n";
}

std::string report_csv(const ProtocolReport& r) { return csv_branch_rows(r); }

std::string report_table(const ProtocolReport& r, const std::vector<Check>& checks,
                         bool color) {
    std::ostringstream os;
    os << "teleportation outcome report\n";
    os << summarize_params(r.params, r.input);
    os << "p_success_exact      = " << format_double(r.p_success_exact) << "\n";
    os << "p_success_formula    = " << format_double(r.p_success_formula) << "  (2b^2)\n";
    os << "p_fail_vonneumann    = " << format_double(r.p_fail_vn_exact) << "\n";
    os << "p_fail_inconclusive  = " << format_double(r.p_fail_inconclusive_exact) << "\n";
    os << "min_success_fidelity = " << format_double(r.min_success_fidelity) << "\n";
    if (r.mc) {
        os << "monte carlo: trials=" << r.mc->trials << " seed=" << r.mc->seed
           << " successes=" << r.mc->successes << " p_hat=" << format_double(r.mc->p_hat)
           << " std_err=" << format_double(r.mc->std_err) << "\n";
    }
    os << "\nbranches (bell, vonneumann, povm -> probability, classification, fidelity)\n";
    for (const auto& row : r.branches.rows) {
        os << "  " << std::left << std::setw(5) << to_string(row.outcomes.bell)
           << std::setw(3) << row.outcomes.vonneumann << std::setw(13)
           << (row.outcomes.povm ? to_string(*row.outcomes.povm) : "-") << std::right
           << std::setw(22) << format_double(row.probability) << "  " << std::left
           << std::setw(18) << to_string(row.classification)
           << (row.fidelity ? format_double(*row.fidelity) : "")
           << (row.zero_probability ? "  (unreachable)" : "") << "\n";
    }
    os << "\npovm validation\n";
    append_povm_lines(os, "  set A", r.povm_a);
    append_povm_lines(os, "  set B", r.povm_b);
    os << "\nchecks\n";
    for (const auto& c : checks) {
        os << "  " << pass_tag(c.passed, color) << " " << c.name
           << " (residual " << format_double(c.residual) << " <= "
           << format_double(c.threshold) << ")\n";
    }
    return os.str();
}

std::string sweep_json(const std::vector<ProtocolReport>& reports) {
    JsonWriter w;
    w.begin_array();
    for (const auto& r : reports) {
        write_report_body(w, r);
    }
    w.end_array();
    return w.str() + "\n";
}

std::string sweep_csv(const std::vector<ProtocolReport>& reports) {
    std::string out =
        "a,b,c,alpha_re,alpha_im,beta_re,beta_im,p_success_exact,p_success_formula,"
        "p_fail_vonneumann,p_fail_inconclusive,min_success_fidelity\n";
    for (const auto& r : reports) {
        out += format_double(r.params.a()) + ',' + format_double(r.params.b()) + ',' +
               format_double(r.params.c()) + ',' + format_double(r.input.alpha().real()) +
               ',' + format_double(r.input.alpha().imag()) + ',' +
               format_double(r.input.beta().real()) + ',' +
               format_double(r.input.beta().imag()) + ',' +
               format_double(r.p_success_exact) + ',' + format_double(r.p_success_formula) +
               ',' + format_double(r.p_fail_vn_exact) + ',' +
               format_double(r.p_fail_inconclusive_exact) + ',' +
               format_double(r.min_success_fidelity) + '\n';
    }
    return out;
}

std::string sweep_table(const std::vector<ProtocolReport>& reports, bool color) {
    std::ostringstream os;
    os << "sweep over " << reports.size() << " channel point(s)\n";
    os << "  a            b            c            p_success    p_fail_vn    "
          "p_fail_inc   min_fidelity\n";
    for (const auto& r : reports) {
        os << "  " << std::left << std::setw(13) << format_double(r.params.a())
           << std::setw(13) << format_double(r.params.b()) << std::setw(13)
           << format_double(r.params.c()) << std::setw(13)
           << format_double(r.p_success_exact) << std::setw(13)
           << format_double(r.p_fail_vn_exact) << std::setw(13)
           << format_double(r.p_fail_inconclusive_exact)
           << format_double(r.min_success_fidelity) << "\n";
    }
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && all_passed(run_checks(r));
    }
    os << pass_tag(ok, color) << " all per-point checks\n";
    return os.str();
}

std::string povm_report_json(const PovmReport& r) {
    JsonWriter w;
    w.begin_object();
    w.key("params");
    w.begin_object();
    w.key("a");
    w.number(r.params.a());
    w.key("b");
    w.number(r.params.b());
    w.key("c");
    w.number(r.params.c());
    w.key("x1");
    w.number(r.disc.x1());
    w.key("y1");
    w.number(r.disc.y1());
    w.end_object();
    w.key("povm");
    w.begin_object();
    w.key("set_a");
    write_povm_validation(w, r.set_a);
    w.key("set_b");
    write_povm_validation(w, r.set_b);
    w.end_object();
    w.end_object();
    return w.str() + "\n";
}

std::string povm_report_csv(const PovmReport& r) {
    std::string out = "set,completeness_residual,min_eigenvalue,unambiguity_residual,"
                      "conclusive_probability\n";
    auto line = [](const char* name, const PovmValidation& v) {
        return std::string(name) + ',' + format_double(v.completeness_residual) + ',' +
               format_double(v.min_eigenvalue) + ',' +
               format_double(v.unambiguity_residual) + ',' +
               format_double(v.conclusive_probability) + '\n';
    };
    out += line("A", r.set_a);
    out += line("B", r.set_b);
    return out;
}

std::string povm_report_table(const PovmReport& r, bool color) {
    std::ostringstream os;
    os << "unambiguous-discrimination POVM validation\n";
    os << "  x1=" << format_double(r.disc.x1()) << "  y1=" << format_double(r.disc.y1())
       << "  expected conclusive probability 2*y1^2="
       << format_double(2.0 * r.disc.y1() * r.disc.y1()) << "\n";
    append_povm_lines(os, "  set A", r.set_a);
    append_povm_lines(os, "  set B", r.set_b);
    os << pass_tag(r.set_a.passed() && r.set_b.passed(), color) << " POVM axioms\n";
    return os.str();
}

}  // namespace wsim
