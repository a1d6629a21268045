#include "renyiwalk/walkspec.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "renyiwalk/numeric.hpp"
#include "renyiwalk/tilting.hpp"

namespace renyiwalk {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long to_long(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw WalkSpecError(std::string("bad integer for ") + what + ": '" + s + "'");
    }
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw WalkSpecError("empty weight");
    const auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            mpq_class q(s, 10);  // GMP handles "p/q"; base fixed to avoid octal
            q.canonicalize();
            return q;
        }
        const auto dot = s.find('.');
        if (dot == std::string::npos) {
            mpq_class q(s, 10);
            q.canonicalize();
            return q;
        }
        // decimal: digits.digits -> digits_digits / 10^k
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t frac_len = s.size() - dot - 1;
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw WalkSpecError("bad weight: '" + s + "'");
    }
}

WalkSpecFile parse_walk_spec(std::istream& in) {
    std::string section;
    std::string line;
    int lineno = 0;

    bool saw_group = false;
    std::string kind, table_text;
    std::optional<long> rank, lamp_order, z_coordinate;
    bool saw_builtin = false;
    std::string builtin;
    std::optional<std::string> beta_text;
    WalkSpecFile out;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw WalkSpecError("line " + std::to_string(lineno) + ": bad section header");
            section = t.substr(1, t.size() - 2);
            if (section != "group" && section != "step" && section != "transform" &&
                section != "arithmetic")
                throw WalkSpecError("unknown section [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw WalkSpecError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));

        if (section == "group") {
            saw_group = true;
            if (key == "kind")
                kind = value;
            else if (key == "rank")
                rank = to_long(value, "rank");
            else if (key == "lamp_order")
                lamp_order = to_long(value, "lamp_order");
            else if (key == "z_coordinate")
                z_coordinate = to_long(value, "z_coordinate");
            else if (key == "table")
                table_text = value;
            else
                throw WalkSpecError("unknown [group] key: " + key);
        } else if (section == "step") {
            if (key == "builtin") {
                saw_builtin = true;
                builtin = value;
            } else if (key == "beta") {
                beta_text = value;
            } else if (key == "atom") {
                const auto space = value.find_last_of(" \t");
                if (space == std::string::npos)
                    throw WalkSpecError("atom needs '<element> <weight>': " + value);
                out.atoms.emplace_back(trim(value.substr(0, space)),
                                       trim(value.substr(space + 1)));
            } else {
                throw WalkSpecError("unknown [step] key: " + key);
            }
        } else if (section == "transform") {
            if (key == "tilt") {
                try {
                    out.tilt_t = std::stod(value);
                } catch (const std::exception&) {
                    throw WalkSpecError("bad tilt value: '" + value + "'");
                }
            } else {
                throw WalkSpecError("unknown [transform] key: " + key);
            }
        } else if (section == "arithmetic") {
            if (key == "mode") {
                if (value == "rational")
                    out.mode = WeightMode::Rational;
                else if (value == "logfloat")
                    out.mode = WeightMode::LogFloat;
                else
                    throw WalkSpecError("mode must be rational or logfloat");
            } else {
                throw WalkSpecError("unknown [arithmetic] key: " + key);
            }
        } else {
            throw WalkSpecError("line " + std::to_string(lineno) +
                                ": key outside any section");
        }
    }

    if (!saw_group) throw WalkSpecError("missing [group] section");
    try {
        if (kind == "free") {
            if (!rank) throw WalkSpecError("free group needs rank");
            out.group = GroupSpec::free_group(static_cast<int>(*rank));
        } else if (kind == "lamplighter") {
            if (!lamp_order) throw WalkSpecError("lamplighter needs lamp_order");
            out.group = GroupSpec::lamplighter(static_cast<int>(*lamp_order));
        } else if (kind == "zd") {
            if (!rank) throw WalkSpecError("zd needs rank");
            out.group = GroupSpec::z_lattice(static_cast<int>(*rank),
                                             static_cast<int>(z_coordinate.value_or(0)));
        } else if (kind == "table") {
            if (table_text.empty()) throw WalkSpecError("table group needs table rows");
            std::vector<std::vector<int>> table;
            std::stringstream rows(table_text);
            std::string row;
            while (std::getline(rows, row, ';')) {
                std::vector<int> r;
                std::stringstream cells(row);
                std::string cell;
                while (cells >> cell) r.push_back(static_cast<int>(to_long(cell, "table")));
                if (!r.empty()) table.push_back(std::move(r));
            }
            out.group = GroupSpec::finite_table(std::move(table));
        } else {
            throw WalkSpecError("unknown group kind: '" + kind + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw WalkSpecError(e.what());
    }

    if (saw_builtin) {
        if (!out.atoms.empty())
            throw WalkSpecError("builtin walks reject explicit atom lists");
        if (builtin == "srw-free")
            out.step_kind = WalkSpecFile::StepKind::BuiltinFreeSrw;
        else if (builtin == "sws")
            out.step_kind = WalkSpecFile::StepKind::BuiltinSws;
        else
            throw WalkSpecError("unknown builtin: '" + builtin + "'");
        if (beta_text) out.sws_beta = parse_rational(*beta_text);
    } else {
        if (out.atoms.empty()) throw WalkSpecError("missing [step]: builtin or atoms");
        out.step_kind = WalkSpecFile::StepKind::Explicit;
        if (beta_text) throw WalkSpecError("beta applies only to the sws builtin");
    }
    return out;
}

WalkSpecFile parse_walk_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw WalkSpecError("cannot open walk spec: " + path);
    return parse_walk_spec(in);
}

Walk build_walk(const WalkSpecFile& spec) {
    Walk walk = [&]() -> Walk {
        switch (spec.step_kind) {
            case WalkSpecFile::StepKind::BuiltinFreeSrw: {
                if (spec.group.kind() != GroupKind::Free)
                    throw WalkSpecError("srw-free needs a free group");
                return Walk::free_srw(spec.group.rank(), spec.mode);
            }
            case WalkSpecFile::StepKind::BuiltinSws: {
                if (spec.group.kind() != GroupKind::Lamplighter ||
                    spec.group.lamp_order() != 2)
                    throw WalkSpecError("sws needs the lamplighter group with lamp_order 2");
                const double beta = spec.sws_beta.get_d();
                if (!(beta > -1.0 && beta < 1.0))
                    throw WalkSpecError("sws beta must lie in (-1, 1)");
                if (spec.mode == WeightMode::Rational) {
                    Measure step = sws_step_measure(spec.sws_beta);
                    Walk w{step.group(), step, Walk::Builtin::Sws, 0, beta};
                    return w;
                }
                return Walk::sws(beta, WeightMode::LogFloat);
            }
            case WalkSpecFile::StepKind::Explicit: {
                Group g(spec.group);
                std::vector<Measure::Atom> atoms;
                for (const auto& [el_text, w_text] : spec.atoms) {
                    GroupElement el = [&] {
                        try {
                            return g.parse(el_text);
                        } catch (const std::invalid_argument& e) {
                            throw WalkSpecError(std::string("bad element: ") + e.what());
                        }
                    }();
                    const mpq_class w = parse_rational(w_text);
                    if (w <= 0) throw WalkSpecError("atom weights must be positive");
                    atoms.emplace_back(el, spec.mode == WeightMode::Rational
                                               ? Weight::rational(w)
                                               : Weight::log_float(log_mpq(w)));
                }
                try {
                    return Walk::custom(Measure(g, std::move(atoms)));
                } catch (const std::invalid_argument& e) {
                    throw WalkSpecError(e.what());
                }
            }
        }
        throw std::logic_error("unreachable");
    }();

    if (spec.tilt_t && *spec.tilt_t != 0.0) {
        const double t = *spec.tilt_t;
        if (!walk.group.spec().has_z_quotient())
            throw WalkSpecError("tilt needs a group with a Z-quotient");
        if (walk.builtin == Walk::Builtin::Sws) {
            // Fold the tilt into the bias: beta' = tanh(t + atanh(beta)).
            const double beta2 = std::tanh(t + std::atanh(walk.sws_beta));
            return Walk::sws(beta2, WeightMode::LogFloat);
        }
        Walk tilted = Walk::custom(tilt(walk.step, t).measure);
        return tilted;
    }
    return walk;
}

}  // namespace renyiwalk
