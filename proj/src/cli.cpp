// SPDX-License-Identifier: Apache-2.0
#include "termcalc/cli.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "termcalc/algebra.hpp"
#include "termcalc/balanced.hpp"
#include "termcalc/compose.hpp"
#include "termcalc/deduction.hpp"
#include "termcalc/errors.hpp"
#include "termcalc/essential.hpp"
#include "termcalc/hyper.hpp"
#include "termcalc/position.hpp"
#include "termcalc/probes.hpp"
#include "termcalc/proof.hpp"
#include "termcalc/sigma_compose.hpp"
#include "termcalc/term.hpp"
#include "termcalc/theory.hpp"

namespace termcalc::cli {
namespace {

using nlohmann::json;

constexpr int kOk = 0;        // affirmative / done
constexpr int kNegative = 1;  // refuted / unbalanced / counterexample
constexpr int kUnknown = 2;   // undecided within budget
constexpr int kUsage = 64;    // bad flags or arguments
constexpr int kBadInput = 65; // parse or validation failure in an input

/// Flags shared by every subcommand. A single instance is reused: only one
/// subcommand parses per invocation.
struct Common {
    std::string theory_path;
    std::string algebra_path;
    std::vector<std::string> budget_kvs;
    std::optional<std::uint64_t> seed;
    bool strict = false;
    bool permissive = false;
    std::string format = "text";

    bool json_mode() const { return format == "json"; }
    Strictness strictness() const {
        return permissive ? Strictness::Permissive : Strictness::Strict;
    }
};

void add_common(CLI::App* sc, Common& c) {
    sc->add_option("--theory", c.theory_path, "theory file to load");
    sc->add_option("--algebra", c.algebra_path, "finite algebra JSON file");
    sc->add_option("--budget", c.budget_kvs,
                   "budget override, repeatable: term_size=N, steps=N, model_size=N");
    sc->add_option("--seed", c.seed, "seed for randomized subcommands");
    sc->add_flag("--strict", c.strict, "fail instead of skipping undecided side conditions");
    sc->add_flag("--permissive", c.permissive, "skip undecided side conditions with a note");
    sc->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
}

void apply_budget(Budget& b, const std::vector<std::string>& kvs) {
    for (const std::string& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ValidationError("budget override must look like key=value: " + kv);
        std::string key = kv.substr(0, eq);
        int value = 0;
        try {
            std::size_t used = 0;
            value = std::stoi(kv.substr(eq + 1), &used);
            if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
        } catch (const std::exception&) {
            throw ValidationError("budget value is not an integer: " + kv);
        }
        if (value <= 0) throw ValidationError("budget value must be positive: " + kv);
        if (key == "term_size")
            b.max_term_size = value;
        else if (key == "steps")
            b.max_steps = value;
        else if (key == "model_size")
            b.max_model_size = value;
        else
            throw ValidationError("unknown budget key: " + key);
    }
}

Theory require_theory(const Common& c) {
    if (c.theory_path.empty()) throw ValidationError("this subcommand needs --theory");
    Theory T = load_theory(c.theory_path);
    apply_budget(T.budget, c.budget_kvs);
    return T;
}

/// Parses a term against the theory's signature when one was given,
/// otherwise against the signature the term itself implies.
Term parse_term_arg(const Common& c, std::optional<Theory>& T, const std::string& text) {
    if (!c.theory_path.empty()) {
        if (!T) T = require_theory(c);
        return parse_term(text, T->sig);
    }
    return parse_term(text);
}

bool single_digit_for(const std::optional<Theory>& T, const Term& t) {
    if (T) return T->sig.single_digit_positions();
    return inferred_signature(t).single_digit_positions();
}

std::string var_name(int index) { return "x" + std::to_string(index); }

std::string env_text(const Assignment& env) {
    std::string s;
    for (const auto& [var, value] : env) {
        if (!s.empty()) s += ' ';
        s += var_name(var) + "=" + std::to_string(value);
    }
    return s;
}

json env_json(const Assignment& env) {
    json j = json::object();
    for (const auto& [var, value] : env) j[var_name(var)] = value;
    return j;
}

json witness_json(const Witness& w) {
    return json{{"algebra", json::parse(w.algebra.to_json_text())}, {"env", env_json(w.env)}};
}

void print_witness_text(std::ostream& out, const Witness& w) {
    out << "algebra: " << json::parse(w.algebra.to_json_text()).dump() << "\n";
    out << "env: " << env_text(w.env) << "\n";
}

json name_list(const std::vector<int>& vars) {
    json a = json::array();
    for (int v : vars) a.push_back(var_name(v));
    return a;
}

json position_list(const std::vector<Position>& ps, bool sd) {
    json a = json::array();
    for (const Position& p : ps) a.push_back(p.str(sd));
    return a;
}

json term_list(const std::vector<Term>& ts) {
    json a = json::array();
    for (const Term& t : ts) a.push_back(t.str());
    return a;
}

std::string join_names(const std::vector<int>& vars) {
    std::string s;
    for (int v : vars) {
        if (!s.empty()) s += ' ';
        s += var_name(v);
    }
    return s;
}

std::string join_positions(const std::vector<Position>& ps, bool sd) {
    std::string s;
    for (const Position& p : ps) {
        if (!s.empty()) s += ' ';
        s += p.str(sd);
    }
    return s;
}

std::string join_terms(const std::vector<Term>& ts) {
    std::string s;
    for (const Term& t : ts) {
        if (!s.empty()) s += ' ';
        s += t.str();
    }
    return s;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"term calculus: positions, replacement, essential structure, deduction"};
    app.name("termcalc");
    app.require_subcommand(1);

    Common C;
    // Positional slots; only the chosen subcommand fills them.
    std::string arg1, arg2, arg3;
    std::vector<std::string> rest;
    std::string system_name_opt = "any";
    std::string goal_text;
    std::string hyper_text;
    int vars_opt = 3;
    int depth_opt = 2;
    bool force = false;

    // The selected subcommand stores its work here; it runs after parsing so
    // that domain errors map to exit codes instead of CLI11 diagnostics.
    std::function<int()> action;

    auto set = [&action](std::function<int()> f) {
        return [&action, f = std::move(f)]() { action = f; };
    };

    // --- syntactic subcommands -------------------------------------------

    auto* positions_cmd = app.add_subcommand("positions", "list the positions of a term");
    positions_cmd->add_option("term", arg1, "term")->required();
    add_common(positions_cmd, C);
    positions_cmd->callback(set([&]() {
        std::optional<Theory> T;
        Term t = parse_term_arg(C, T, arg1);
        bool sd = single_digit_for(T, t);
        auto ps = positions(t);
        if (C.json_mode()) {
            json j{{"term", t.str()}, {"positions", position_list(ps, sd)}};
            out << j.dump(2) << "\n";
        } else {
            out << join_positions(ps, sd) << "\n";
        }
        return kOk;
    }));

    auto* subterm_cmd = app.add_subcommand("subterm", "print the subterm at a position");
    subterm_cmd->add_option("term", arg1, "term")->required();
    subterm_cmd->add_option("position", arg2, "position, e.g. e or 121")->required();
    add_common(subterm_cmd, C);
    subterm_cmd->callback(set([&]() {
        std::optional<Theory> T;
        Term t = parse_term_arg(C, T, arg1);
        Position p = Position::parse(arg2);
        Term s = subterm_at(t, p);
        if (C.json_mode()) {
            json j{{"term", t.str()},
                   {"position", p.str(single_digit_for(T, t))},
                   {"subterm", s.str()}};
            out << j.dump(2) << "\n";
        } else {
            out << s.str() << "\n";
        }
        return kOk;
    }));

    auto* depth_cmd = app.add_subcommand("depth", "print depth and size of a term");
    depth_cmd->add_option("term", arg1, "term")->required();
    add_common(depth_cmd, C);
    depth_cmd->callback(set([&]() {
        std::optional<Theory> T;
        Term t = parse_term_arg(C, T, arg1);
        if (C.json_mode()) {
            json j{{"term", t.str()},
                   {"depth", t.depth()},
                   {"size", static_cast<int>(t.size())}};
            out << j.dump(2) << "\n";
        } else {
            out << "depth: " << t.depth() << "\n";
            out << "size: " << t.size() << "\n";
        }
        return kOk;
    }));

    auto* cpos_cmd =
        app.add_subcommand("compose-pos", "replace the subterm at one position: t(p; s)");
    cpos_cmd->add_option("term", arg1, "host term t")->required();
    cpos_cmd->add_option("position", arg2, "position p")->required();
    cpos_cmd->add_option("replacement", arg3, "replacement term s")->required();
    add_common(cpos_cmd, C);
    cpos_cmd->callback(set([&]() {
        std::optional<Theory> T;
        Term t = parse_term_arg(C, T, arg1);
        Position p = Position::parse(arg2);
        Term s = parse_term_arg(C, T, arg3);
        Term result = replace_at(t, p, s);
        if (C.json_mode()) {
            json j{{"result", result.str()}};
            out << j.dump(2) << "\n";
        } else {
            out << result.str() << "\n";
        }
        return kOk;
    }));

    auto* cind_cmd = app.add_subcommand(
        "compose-ind", "replace every occurrence of one subterm: t(r <- s)");
    cind_cmd->add_option("term", arg1, "host term t")->required();
    cind_cmd->add_option("target", arg2, "subterm r to replace")->required();
    cind_cmd->add_option("replacement", arg3, "replacement term s")->required();
    add_common(cind_cmd, C);
    cind_cmd->callback(set([&]() {
        std::optional<Theory> T;
        Term t = parse_term_arg(C, T, arg1);
        Term r = parse_term_arg(C, T, arg2);
        Term s = parse_term_arg(C, T, arg3);
        Term result = inductive_compose(t, r, s);
        if (C.json_mode()) {
            json j{{"result", result.str()}};
            out << j.dump(2) << "\n";
        } else {
            out << result.str() << "\n";
        }
        return kOk;
    }));

    // --- semantic subcommands --------------------------------------------

    auto* scomp_cmd = app.add_subcommand(
        "sigma-compose", "replace the minimal front of a subterm class: t^S(r <- s)");
    scomp_cmd->add_option("term", arg1, "host term t")->required();
    scomp_cmd->add_option("target", arg2, "class representative r")->required();
    scomp_cmd->add_option("replacement", arg3, "replacement term s")->required();
    add_common(scomp_cmd, C);
    scomp_cmd->get_option("--theory")->required();
    scomp_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        Term t = parse_term(arg1, T.sig);
        Term r = parse_term(arg2, T.sig);
        Term s = parse_term(arg3, T.sig);
        Term result = sigma_compose(T, t, r, s, C.strictness());
        if (C.json_mode()) {
            json j{{"result", result.str()}};
            out << j.dump(2) << "\n";
        } else {
            out << result.str() << "\n";
        }
        return kOk;
    }));

    auto* evars_cmd =
        app.add_subcommand("ess-vars", "split the variables of a term by essentiality");
    evars_cmd->add_option("term", arg1, "term")->required();
    add_common(evars_cmd, C);
    evars_cmd->get_option("--theory")->required();
    evars_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        Term t = parse_term(arg1, T.sig);
        VarReport rep = essential_vars(T, t);
        if (C.json_mode()) {
            json j{{"term", t.str()},
                   {"essential", name_list(rep.essential)},
                   {"fictive", name_list(rep.fictive)},
                   {"unknown", name_list(rep.unknown)}};
            out << j.dump(2) << "\n";
        } else {
            out << "essential: " << join_names(rep.essential) << "\n";
            out << "fictive: " << join_names(rep.fictive) << "\n";
            out << "unknown: " << join_names(rep.unknown) << "\n";
        }
        return rep.unknown.empty() ? kOk : kUnknown;
    }));

    auto* epos_cmd =
        app.add_subcommand("ess-pos", "split the positions of a term by essentiality");
    epos_cmd->add_option("term", arg1, "term")->required();
    add_common(epos_cmd, C);
    epos_cmd->get_option("--theory")->required();
    epos_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        Term t = parse_term(arg1, T.sig);
        bool sd = T.sig.single_digit_positions();
        PosReport rep = essential_positions(T, t);
        if (C.json_mode()) {
            json j{{"term", t.str()},
                   {"essential", position_list(rep.essential, sd)},
                   {"fictive", position_list(rep.fictive, sd)},
                   {"unknown", position_list(rep.unknown, sd)}};
            out << j.dump(2) << "\n";
        } else {
            out << "essential: " << join_positions(rep.essential, sd) << "\n";
            out << "fictive: " << join_positions(rep.fictive, sd) << "\n";
            out << "unknown: " << join_positions(rep.unknown, sd) << "\n";
        }
        return rep.unknown.empty() ? kOk : kUnknown;
    }));

    auto* psets_cmd = app.add_subcommand(
        "pos-sets", "class occurrences, minimal front, and essential front of r in t");
    psets_cmd->add_option("term", arg1, "host term t")->required();
    psets_cmd->add_option("target", arg2, "class representative r")->required();
    add_common(psets_cmd, C);
    psets_cmd->get_option("--theory")->required();
    psets_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        Term t = parse_term(arg1, T.sig);
        Term r = parse_term(arg2, T.sig);
        bool sd = T.sig.single_digit_positions();
        PositionSets ps = position_sets(T, t, r, C.strictness());
        if (C.json_mode()) {
            json j{{"class", term_list(ps.class_subterms)},
                   {"positions", position_list(ps.class_positions, sd)},
                   {"front", position_list(ps.front, sd)},
                   {"essential_front", position_list(ps.essential_front, sd)},
                   {"notes", ps.notes}};
            out << j.dump(2) << "\n";
        } else {
            out << "class: " << join_terms(ps.class_subterms) << "\n";
            out << "positions: " << join_positions(ps.class_positions, sd) << "\n";
            out << "front: " << join_positions(ps.front, sd) << "\n";
            out << "essential-front: " << join_positions(ps.essential_front, sd) << "\n";
            for (const std::string& n : ps.notes) out << "note: " << n << "\n";
        }
        return kOk;
    }));

    auto* bal_cmd = app.add_subcommand(
        "balanced", "check whether both sides carry each subterm class equally often");
    bal_cmd->add_option("identity", arg1, "identity, e.g. \"f(x1,x2) = f(x2,x1)\"")->required();
    add_common(bal_cmd, C);
    bal_cmd->get_option("--theory")->required();
    bal_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        Identity id = parse_identity(arg1, T.sig);
        BalanceReport rep = is_sigma_balanced(T, id, C.strictness());
        if (C.json_mode()) {
            json j;
            switch (rep.status) {
                case BalanceReport::Status::Balanced: j["status"] = "balanced"; break;
                case BalanceReport::Status::Unbalanced: j["status"] = "unbalanced"; break;
                case BalanceReport::Status::Unknown: j["status"] = "unknown"; break;
            }
            if (rep.mismatch_class) {
                j["class"] = rep.mismatch_class->str();
                j["lhs_count"] = rep.lhs_count;
                j["rhs_count"] = rep.rhs_count;
            }
            if (!rep.note.empty()) j["note"] = rep.note;
            out << j.dump(2) << "\n";
        } else {
            switch (rep.status) {
                case BalanceReport::Status::Balanced: out << "balanced\n"; break;
                case BalanceReport::Status::Unbalanced:
                    out << "unbalanced at q=" << rep.mismatch_class->str() << " (|EP_lhs|="
                        << rep.lhs_count << ", |EP_rhs|=" << rep.rhs_count << ")\n";
                    break;
                case BalanceReport::Status::Unknown:
                    out << "unknown\n";
                    if (!rep.note.empty()) err << rep.note << "\n";
                    break;
            }
        }
        switch (rep.status) {
            case BalanceReport::Status::Balanced: return kOk;
            case BalanceReport::Status::Unbalanced: return kNegative;
            default: return kUnknown;
        }
    }));

    // --- deduction subcommands -------------------------------------------

    auto* prove_cmd =
        app.add_subcommand("prove", "search for a derivation of an identity from the axioms");
    prove_cmd->add_option("identity", arg1, "goal identity")->required();
    prove_cmd->add_option("--system", system_name_opt,
                          "rule system: d, d-refined, sigma-r, any (default any)");
    add_common(prove_cmd, C);
    prove_cmd->get_option("--theory")->required();
    prove_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        auto sys = system_from_name(system_name_opt);
        if (!sys) {
            err << "unknown system: " << system_name_opt << "\n";
            return kUsage;
        }
        Identity goal = parse_identity(arg1, T.sig);
        DeriveResult r = derive(T, goal, *sys, T.budget);
        if (C.json_mode()) {
            json j;
            switch (r.status) {
                case DeriveResult::Status::Proved:
                    j["status"] = "proved";
                    j["proof"] = r.proof->str();
                    j["steps"] = static_cast<int>(r.proof->steps.size());
                    break;
                case DeriveResult::Status::Refuted:
                    j["status"] = "refuted";
                    j["witness"] = witness_json(*r.witness);
                    break;
                case DeriveResult::Status::NotFound: j["status"] = "unknown"; break;
            }
            if (!r.note.empty()) j["note"] = r.note;
            out << j.dump(2) << "\n";
        } else {
            switch (r.status) {
                case DeriveResult::Status::Proved:
                    out << "proved\n" << r.proof->str();
                    break;
                case DeriveResult::Status::Refuted:
                    out << "refuted\n";
                    print_witness_text(out, *r.witness);
                    break;
                case DeriveResult::Status::NotFound:
                    out << "unknown";
                    if (!r.note.empty()) out << ": " << r.note;
                    out << "\n";
                    break;
            }
        }
        switch (r.status) {
            case DeriveResult::Status::Proved: return kOk;
            case DeriveResult::Status::Refuted: return kNegative;
            default: return kUnknown;
        }
    }));

    auto* check_cmd = app.add_subcommand("check-proof", "replay a proof file step by step");
    check_cmd->add_option("proof", arg1, "proof file")->required();
    check_cmd->add_option("--goal", goal_text, "identity the proof must conclude");
    check_cmd->add_option("--system", system_name_opt,
                          "restrict the rules allowed (default any)");
    add_common(check_cmd, C);
    check_cmd->get_option("--theory")->required();
    check_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        auto sys = system_from_name(system_name_opt);
        if (!sys) {
            err << "unknown system: " << system_name_opt << "\n";
            return kUsage;
        }
        Proof proof = Proof::load(arg1);
        std::optional<Identity> goal;
        if (!goal_text.empty()) goal = parse_identity(goal_text, T.sig);
        CheckResult r = check_proof(T, proof, goal, *sys);
        if (C.json_mode()) {
            json j;
            switch (r.status) {
                case CheckResult::Status::Valid: j["status"] = "valid"; break;
                case CheckResult::Status::Invalid: j["status"] = "invalid"; break;
                case CheckResult::Status::Unknown: j["status"] = "unknown"; break;
            }
            if (r.failed_step >= 0) j["step"] = r.failed_step + 1;
            if (!r.reason.empty()) j["reason"] = r.reason;
            j["steps"] = static_cast<int>(proof.steps.size());
            out << j.dump(2) << "\n";
        } else {
            switch (r.status) {
                case CheckResult::Status::Valid:
                    out << "valid (" << proof.steps.size() << " steps)\n";
                    break;
                case CheckResult::Status::Invalid:
                    out << "invalid at step " << (r.failed_step + 1) << ": " << r.reason
                        << "\n";
                    break;
                case CheckResult::Status::Unknown:
                    out << "unknown at step " << (r.failed_step + 1) << ": " << r.reason
                        << "\n";
                    break;
            }
        }
        switch (r.status) {
            case CheckResult::Status::Valid: return kOk;
            case CheckResult::Status::Invalid: return kNegative;
            default: return kUnknown;
        }
    }));

    auto* closure_cmd = app.add_subcommand(
        "closure-sample", "enumerate identities reachable from the axioms within budget");
    closure_cmd->add_option("--system", system_name_opt,
                            "rule system: d, d-refined, sigma-r, any (default any)");
    closure_cmd->add_option("--vars", vars_opt, "report identities over x1..xN (default 3)")
        ->check(CLI::Range(1, 8));
    add_common(closure_cmd, C);
    closure_cmd->get_option("--theory")->required();
    closure_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        auto sys = system_from_name(system_name_opt);
        if (!sys) {
            err << "unknown system: " << system_name_opt << "\n";
            return kUsage;
        }
        std::vector<Identity> ids = closure_sample(T, *sys, T.budget, vars_opt);
        if (C.json_mode()) {
            json a = json::array();
            for (const Identity& id : ids) a.push_back(id.str());
            json j{{"identities", a}, {"count", static_cast<int>(ids.size())}};
            out << j.dump(2) << "\n";
        } else {
            for (const Identity& id : ids) out << id.str() << "\n";
            out << "count: " << ids.size() << "\n";
        }
        return kOk;
    }));

    auto* models_cmd = app.add_subcommand(
        "models", "enumerate finite algebras satisfying the theory's axioms");
    models_cmd->add_flag("--force", force,
                         "allow carrier sizes >= 4 with arity >= 2 (slow)");
    add_common(models_cmd, C);
    models_cmd->get_option("--theory")->required();
    models_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        int cap = T.budget.max_model_size;
        if (cap >= 4 && T.sig.max_arity() >= 2 && !force) {
            err << "refusing carrier size >= 4 with an operation of arity >= 2; "
                   "pass --force to override\n";
            return kUsage;
        }
        ModelEnumerator en(T.sig, T.axioms, cap);
        std::size_t count = 0;
        if (C.json_mode()) {
            json a = json::array();
            while (auto m = en.next()) {
                a.push_back(json::parse(m->to_json_text()));
                ++count;
            }
            json j{{"models", a}, {"count", static_cast<int>(count)}};
            out << j.dump(2) << "\n";
        } else {
            while (auto m = en.next()) {
                out << m->to_json_text() << "\n";
                ++count;
            }
            out << "count: " << count << "\n";
        }
        return kOk;
    }));

    auto* eval_cmd = app.add_subcommand(
        "eval", "evaluate a term or check an identity in a finite algebra");
    eval_cmd->add_option("input", arg1, "term or identity")->required();
    eval_cmd->add_option("assignments", rest, "assignments like x1=0 (terms only)");
    add_common(eval_cmd, C);
    eval_cmd->get_option("--algebra")->required();
    eval_cmd->callback(set([&]() {
        FiniteAlgebra alg = FiniteAlgebra::load(C.algebra_path);
        if (arg1.find('=') != std::string::npos) {
            Identity id = parse_identity(arg1, alg.sig);
            SatisfactionResult sr = satisfies(alg, id);
            if (C.json_mode()) {
                json j{{"identity", id.str()}, {"holds", sr.holds}};
                if (sr.failing) j["failing"] = env_json(*sr.failing);
                out << j.dump(2) << "\n";
            } else if (sr.holds) {
                out << "holds\n";
            } else {
                out << "fails at " << env_text(*sr.failing) << "\n";
            }
            return sr.holds ? kOk : kNegative;
        }
        Term t = parse_term(arg1, alg.sig);
        Assignment env;
        for (const std::string& kv : rest) {
            auto eq = kv.find('=');
            if (eq == std::string::npos || kv.size() < 4 || kv[0] != 'x')
                throw ValidationError("assignment must look like x1=0: " + kv);
            int var = 0, value = 0;
            try {
                var = std::stoi(kv.substr(1, eq - 1));
                value = std::stoi(kv.substr(eq + 1));
            } catch (const std::exception&) {
                throw ValidationError("assignment must look like x1=0: " + kv);
            }
            env[var] = value;
        }
        int value = evaluate(alg, t, env);
        if (C.json_mode()) {
            json j{{"term", t.str()}, {"value", value}};
            out << j.dump(2) << "\n";
        } else {
            out << value << "\n";
        }
        return kOk;
    }));

    // --- hypersubstitution subcommands -----------------------------------

    auto* hyper_cmd = app.add_subcommand(
        "hyper", "apply a hypersubstitution like \"f -> f(x2,x1)\" to a term");
    hyper_cmd->add_option("mapping", arg1, "hypersubstitution text")->required();
    hyper_cmd->add_option("term", arg2, "term")->required();
    add_common(hyper_cmd, C);
    hyper_cmd->get_option("--theory")->required();
    hyper_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        Hypersubstitution h = Hypersubstitution::parse(arg1, T.sig);
        Term t = parse_term(arg2, T.sig);
        Term result = h.apply(t);
        if (C.json_mode()) {
            json j{{"result", result.str()}};
            out << j.dump(2) << "\n";
        } else {
            out << result.str() << "\n";
        }
        return kOk;
    }));

    auto* solid_cmd = app.add_subcommand(
        "solid-probe", "look for a hypersubstitution that breaks the theory's identities");
    solid_cmd->add_option("identities", rest, "identities to test (default: the axioms)");
    solid_cmd->add_option("--hyper", hyper_text, "test a single hypersubstitution");
    solid_cmd->add_option("--depth", depth_opt, "image depth of the generated pool (default 2)")
        ->check(CLI::Range(0, 3));
    add_common(solid_cmd, C);
    solid_cmd->get_option("--theory")->required();
    solid_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        std::vector<Identity> ids;
        for (const std::string& text : rest) ids.push_back(parse_identity(text, T.sig));
        std::vector<Hypersubstitution> pool;
        if (!hyper_text.empty())
            pool.push_back(Hypersubstitution::parse(hyper_text, T.sig));
        else
            pool = hyper_pool(T.sig, depth_opt, 2000);
        SolidityProbeResult r = solidity_probe(T, ids, pool);
        if (C.json_mode()) {
            json j{{"hypers_tried", r.hypers_tried}, {"pairs_checked", r.pairs_checked}};
            if (r.counterexample) {
                j["status"] = "counterexample";
                j["hyper"] = r.counterexample->hyper.str();
                j["original"] = r.counterexample->original.str();
                j["transformed"] = r.counterexample->transformed.str();
                j["witness"] = witness_json(r.counterexample->witness);
            } else {
                j["status"] = "none";
            }
            if (!r.note.empty()) j["note"] = r.note;
            out << j.dump(2) << "\n";
        } else if (r.counterexample) {
            out << "counterexample\n";
            out << "hyper: " << r.counterexample->hyper.str() << "\n";
            out << "original: " << r.counterexample->original.str() << "\n";
            out << "transformed: " << r.counterexample->transformed.str() << "\n";
            print_witness_text(out, r.counterexample->witness);
        } else {
            out << "no counterexample within budget\n";
            if (!r.note.empty()) err << r.note << "\n";
        }
        return r.counterexample ? kNegative : kOk;
    }));

    auto* stable_cmd = app.add_subcommand(
        "stable-probe",
        "sample replacement instances and look for one whose conclusion fails");
    add_common(stable_cmd, C);
    stable_cmd->get_option("--theory")->required();
    stable_cmd->callback(set([&]() {
        Theory T = require_theory(C);
        if (C.json_mode() && !C.seed) {
            err << "stable-probe with --format json needs --seed for reproducibility\n";
            return kUsage;
        }
        StabilityProbeResult r = stability_probe(T, T.budget, C.seed.value_or(1));
        if (C.json_mode()) {
            json j{{"samples_tried", r.samples_tried},
                   {"seed", static_cast<std::uint64_t>(*C.seed)}};
            if (r.counterexample) {
                j["status"] = "counterexample";
                j["base"] = r.counterexample->base.str();
                j["class"] = r.counterexample->class_pair.str();
                j["replacement"] = r.counterexample->replacement.str();
                j["composed"] = r.counterexample->composed.str();
                j["witness"] = witness_json(r.counterexample->witness);
            } else {
                j["status"] = "none";
            }
            if (!r.note.empty()) j["note"] = r.note;
            out << j.dump(2) << "\n";
        } else if (r.counterexample) {
            out << "counterexample\n";
            out << "base: " << r.counterexample->base.str() << "\n";
            out << "class: " << r.counterexample->class_pair.str() << "\n";
            out << "replacement: " << r.counterexample->replacement.str() << "\n";
            out << "composed: " << r.counterexample->composed.str() << "\n";
            print_witness_text(out, r.counterexample->witness);
        } else {
            out << "no counterexample within budget\n";
            if (!r.note.empty()) err << r.note << "\n";
        }
        return r.counterexample ? kNegative : kOk;
    }));

    // --- parse and dispatch ----------------------------------------------

    std::vector<const char*> argv;
    argv.push_back("termcalc");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    if (C.strict && C.permissive) {
        err << "--strict and --permissive exclude each other\n";
        return kUsage;
    }

    try {
        return action ? action() : kUsage;
    } catch (const UnknownVerdictError& e) {
        if (C.json_mode()) {
            json j{{"status", "unknown"}, {"note", e.what()}};
            out << j.dump(2) << "\n";
        } else {
            out << "unknown: " << e.what() << "\n";
        }
        return kUnknown;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kBadInput;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    }
}

} // namespace termcalc::cli
