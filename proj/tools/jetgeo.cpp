// jetgeo: batch front end for the jet-geometry toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 runtime numeric error (evaluation failure or integration blow-up).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "jetgeo/geometry.hpp"
#include "jetgeo/io.hpp"
#include "jetgeo/jetdynamics.hpp"
#include "jetgeo/lorenz5.hpp"
#include "jetgeo/parser.hpp"
#include "jetgeo/verify.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

jetgeo::ParamMap parse_params(const std::vector<std::string>& raw) {
    jetgeo::ParamMap params;
    for (const auto& item : raw) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--param expects NAME=VALUE, got '" + item + "'");
        std::string name = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        try {
            size_t used = 0;
            params[name] = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw UsageError("malformed value in --param " + item);
        }
    }
    return params;
}

Eigen::VectorXd parse_vector(const std::string& csv, const std::string& flag) {
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            size_t used = 0;
            vals.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw UsageError("malformed number '" + cell + "' in " + flag);
        }
    }
    if (vals.empty()) throw UsageError(flag + " expects a comma-separated vector");
    return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<long>(vals.size()));
}

struct FieldSource {
    std::string model;
    std::string path;
    std::vector<std::string> raw_params;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--model", model, "built-in model name (lorenz5)");
        cmd->add_option("--field", field_path_opt(), "field definition file");
        cmd->add_option("--param", raw_params, "parameter binding NAME=VALUE")
            ->take_all();
    }
    std::string& field_path_opt() { return path; }

    jetgeo::VectorField load() const {
        jetgeo::ParamMap params = parse_params(raw_params);
        if (!model.empty() && !path.empty())
            throw UsageError("--model and --field are mutually exclusive");
        if (model.empty() && path.empty())
            throw UsageError("one of --model or --field is required");
        std::optional<jetgeo::VectorField> field;
        if (!model.empty()) {
            if (model != "lorenz5")
                throw UsageError("unknown model '" + model + "' (available: lorenz5)");
            auto f = jetgeo::lorenz_field(0.0);  // text template; rebind params
            field.emplace(
                std::vector<jetgeo::ExprPtr>{f.component(1), f.component(2),
                                             f.component(3), f.component(4),
                                             f.component(5)},
                params);
        } else {
            std::ifstream in(path);
            if (!in) throw UsageError("cannot open field file '" + path + "'");
            std::stringstream buf;
            buf << in.rdbuf();
            field.emplace(jetgeo::parse_field(buf.str(), params));
        }
        auto missing = field->unbound_params();
        if (!missing.empty()) {
            std::string list;
            for (const auto& name : missing) list += (list.empty() ? "" : ", ") + name;
            throw UsageError("unbound parameters: " + list +
                             " (bind with --param NAME=VALUE)");
        }
        return std::move(*field);
    }
};

std::ostream& open_output(const std::string& out_path, std::ofstream& file) {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw UsageError("cannot open output file '" + out_path + "'");
    return file;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jet-geometry toolkit for autonomous first-order ODE systems"};
    app.require_subcommand(1);

    // geometry
    auto* geometry_cmd =
        app.add_subcommand("geometry", "geometric report (JSON) at a point");
    FieldSource geo_src;
    geo_src.add_flags(geometry_cmd);
    std::string geo_at, geo_out, geo_format = "json";
    geometry_cmd->add_option("--at", geo_at, "evaluation point x1,...,xn")->required();
    geometry_cmd->add_option("--out", geo_out, "output path (default stdout)");
    geometry_cmd->add_option("--format", geo_format, "output format (json)")
        ->check(CLI::IsMember({"json"}));

    // integrate
    auto* integrate_cmd =
        app.add_subcommand("integrate", "fixed-step RK4 trajectory (CSV)");
    FieldSource int_src;
    int_src.add_flags(integrate_cmd);
    std::string int_x0, int_v0, int_out;
    double int_t0 = 0.0, int_t1 = 0.0, int_dt = 0.0;
    bool int_el = false, int_obs = false;
    integrate_cmd->add_option("--x0", int_x0, "initial position")->required();
    integrate_cmd->add_option("--v0", int_v0, "initial velocity (with --el)");
    integrate_cmd->add_option("--t0", int_t0, "start time (default 0)");
    integrate_cmd->add_option("--t1", int_t1, "end time")->required();
    integrate_cmd->add_option("--dt", int_dt, "step size")->required();
    integrate_cmd->add_flag("--el", int_el, "integrate the Euler-Lagrange flow");
    integrate_cmd->add_flag("--observables", int_obs, "append eym and jls columns");
    integrate_cmd->add_option("--out", int_out, "output path (default stdout)");
    std::string int_format = "csv";
    integrate_cmd->add_option("--format", int_format, "output format (csv)")
        ->check(CLI::IsMember({"csv"}));

    // action
    auto* action_cmd =
        app.add_subcommand("action", "least-squares energy action of a trajectory");
    FieldSource act_src;
    act_src.add_flags(action_cmd);
    std::string act_traj, act_out;
    action_cmd->add_option("--traj", act_traj, "trajectory CSV path")->required();
    action_cmd->add_option("--out", act_out, "output path (default stdout)");
    std::string act_format = "json";
    action_cmd->add_option("--format", act_format, "output format (json)")
        ->check(CLI::IsMember({"json"}));

    // levelset
    auto* levelset_cmd =
        app.add_subcommand("levelset", "classify the Lorenz EYM level set {EYM = C}");
    double ls_C = 0.0;
    std::vector<std::string> ls_params;
    std::string ls_out;
    levelset_cmd->add_option("--C", ls_C, "level value")->required();
    levelset_cmd->add_option("--param", ls_params, "eps=VALUE")->take_all();
    levelset_cmd->add_option("--out", ls_out, "output path (default stdout)");
    std::string ls_format = "json";
    levelset_cmd->add_option("--format", ls_format, "output format (json)")
        ->check(CLI::IsMember({"json"}));

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "run the invariant suites, exit 1 on failure");
    FieldSource ver_src;
    ver_src.add_flags(verify_cmd);
    std::uint64_t ver_seed = 0;
    std::string ver_out;
    verify_cmd->add_option("--seed", ver_seed, "random-point seed (default 0)");
    verify_cmd->add_option("--out", ver_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*geometry_cmd) {
            jetgeo::VectorField field = geo_src.load();
            Eigen::VectorXd x = parse_vector(geo_at, "--at");
            if (x.size() != field.dim())
                throw UsageError("--at has dimension " + std::to_string(x.size()) +
                                 " but the field has dimension " +
                                 std::to_string(field.dim()));
            std::ofstream file;
            auto& out = open_output(geo_out, file);
            out << jetgeo::to_json(jetgeo::geometry_report(field, x)).dump(2) << '\n';
        } else if (*integrate_cmd) {
            jetgeo::VectorField field = int_src.load();
            Eigen::VectorXd x0 = parse_vector(int_x0, "--x0");
            if (x0.size() != field.dim())
                throw UsageError("--x0 dimension does not match the field");
            if (int_dt <= 0) throw UsageError("--dt must be positive");
            if (int_t1 <= int_t0) throw UsageError("--t1 must exceed --t0");
            jetgeo::Trajectory traj;
            if (int_el) {
                if (int_v0.empty()) throw UsageError("--el requires --v0");
                Eigen::VectorXd v0 = parse_vector(int_v0, "--v0");
                if (v0.size() != field.dim())
                    throw UsageError("--v0 dimension does not match the field");
                traj = jetgeo::integrate_el(field, x0, v0, int_t0, int_t1, int_dt);
            } else {
                if (!int_v0.empty()) throw UsageError("--v0 requires --el");
                traj = jetgeo::integrate_field(field, x0, int_t0, int_t1, int_dt);
            }
            std::ofstream file;
            auto& out = open_output(int_out, file);
            jetgeo::write_csv(out, traj, int_obs ? &field : nullptr);
        } else if (*action_cmd) {
            jetgeo::VectorField field = act_src.load();
            std::ifstream in(act_traj);
            if (!in) throw UsageError("cannot open trajectory file '" + act_traj + "'");
            jetgeo::Trajectory traj;
            try {
                traj = jetgeo::read_csv(in);
            } catch (const std::runtime_error& err) {
                throw UsageError(err.what());
            }
            if (traj.xs.front().size() != field.dim())
                throw UsageError("trajectory dimension does not match the field");
            std::ofstream file;
            auto& out = open_output(act_out, file);
            out << nlohmann::json{{"action", jetgeo::action(field, traj)}}.dump() << '\n';
        } else if (*levelset_cmd) {
            jetgeo::ParamMap params = parse_params(ls_params);
            auto it = params.find("eps");
            if (it == params.end()) throw UsageError("levelset requires --param eps=VALUE");
            std::ofstream file;
            auto& out = open_output(ls_out, file);
            out << jetgeo::to_json(jetgeo::classify_level_set(ls_C, it->second)).dump(2)
                << '\n';
        } else if (*verify_cmd) {
            std::vector<jetgeo::SuiteResult> results;
            if (ver_src.model.empty() && !ver_src.path.empty()) {
                results = jetgeo::verify_field(ver_src.load(), ver_seed);
            } else {
                if (ver_src.model.empty()) ver_src.model = "lorenz5";
                if (ver_src.model != "lorenz5")
                    throw UsageError("unknown model '" + ver_src.model + "'");
                results = jetgeo::verify_lorenz(ver_seed);
            }
            std::ofstream file;
            auto& out = open_output(ver_out, file);
            out << jetgeo::format_report(results);
            return jetgeo::all_pass(results) ? 0 : 1;
        }
    } catch (const UsageError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const jetgeo::ParseError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const jetgeo::IntegrationError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 3;
    } catch (const jetgeo::EvalError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 0;
}
