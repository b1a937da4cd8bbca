#include "svrp/io.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace svrp::io {

namespace {

using Json = nlohmann::ordered_json;

double real_out(double value) { return canonical_real(value); }

// Strict view over one JSON object: typed accessors that name the field
// path on failure, and a final check rejecting unknown keys.
class Fields {
public:
    Fields(Json const &object, std::string path) : object_(object), path_(std::move(path))
    {
        if (!object_.is_object())
            throw FormatError(path_ + ": expected an object");
    }

    bool has(std::string const &key) const { return object_.contains(key); }

    Json const &require(std::string const &key)
    {
        if (!object_.contains(key))
            throw FormatError(path_ + ": missing field '" + key + "'");
        used_.insert(key);
        return object_.at(key);
    }

    double real(std::string const &key)
    {
        auto const &value = require(key);
        if (!value.is_number())
            throw FormatError(where(key) + ": expected a number");
        return value.get<double>();
    }

    double real_or(std::string const &key, double fallback)
    {
        return has(key) ? real(key) : fallback;
    }

    long long integer(std::string const &key)
    {
        auto const &value = require(key);
        if (!value.is_number_integer())
            throw FormatError(where(key) + ": expected an integer");
        return value.get<long long>();
    }

    std::uint64_t unsigned64(std::string const &key)
    {
        auto const &value = require(key);
        if (value.is_number_unsigned())
            return value.get<std::uint64_t>();
        if (value.is_number_integer() && value.get<long long>() >= 0)
            return static_cast<std::uint64_t>(value.get<long long>());
        throw FormatError(where(key) + ": expected a non-negative integer");
    }

    std::string text(std::string const &key)
    {
        auto const &value = require(key);
        if (!value.is_string())
            throw FormatError(where(key) + ": expected a string");
        return value.get<std::string>();
    }

    bool boolean(std::string const &key)
    {
        auto const &value = require(key);
        if (!value.is_boolean())
            throw FormatError(where(key) + ": expected a boolean");
        return value.get<bool>();
    }

    Json const &array(std::string const &key)
    {
        auto const &value = require(key);
        if (!value.is_array())
            throw FormatError(where(key) + ": expected an array");
        return value;
    }

    template <typename Parse>
    auto parsed(std::string const &key, Parse parse)
    {
        auto const value = text(key);
        try
        {
            return parse(value);
        }
        catch (std::invalid_argument const &error)
        {
            throw FormatError(where(key) + ": " + error.what());
        }
    }

    std::string where(std::string const &key) const { return path_ + "." + key; }

    void finish() const
    {
        for (auto const &[key, value] : object_.items())
            if (!used_.contains(key))
                throw FormatError(path_ + ": unknown field '" + key + "'");
    }

private:
    Json const &object_;
    std::string path_;
    std::set<std::string> used_;
};

Json parse_json(std::string_view text, char const *what)
{
    try
    {
        return Json::parse(text);
    }
    catch (Json::parse_error const &error)
    {
        throw FormatError(std::string(what) + ": malformed JSON: " + error.what());
    }
}

void check_version(Fields &fields, std::string const &path)
{
    auto const version = fields.integer("format_version");
    if (version != kFormatVersion)
        throw FormatError(path + ".format_version: unsupported version "
                          + std::to_string(version) + " (expected "
                          + std::to_string(kFormatVersion) + ")");
}

int to_int(long long value, std::string const &path)
{
    if (value < INT32_MIN || value > INT32_MAX)
        throw FormatError(path + ": integer out of range");
    return static_cast<int>(value);
}

// Stochastic and window parameter blocks share one field table so that
// serialization, full parsing and partial overrides stay in sync.
template <typename Visit>
void visit_stochastic(StochasticParams &p, Visit visit)
{
    visit("mu_morning", p.mu_morning);
    visit("mu_evening", p.mu_evening);
    visit("sigma_peak", p.sigma_peak);
    visit("lambda_dist", p.lambda_dist);
    visit("mu_base", p.mu_base);
    visit("sigma_base", p.sigma_base);
    visit("delta", p.delta);
    visit("epsilon", p.epsilon);
    visit("mu_night", p.mu_night);
    visit("sigma_acc", p.sigma_acc);
    visit("lambda_scale", p.lambda_scale);
    visit("accident_delay_min", p.accident_delay_min);
    visit("accident_delay_max", p.accident_delay_max);
    visit("alpha", p.alpha);
    visit("beta_base", p.beta_base);
    visit("gamma_amp", p.gamma_amp);
    visit("speed_v", p.speed_v);
}

template <typename Visit>
void visit_windows(TimeWindowParams &p, Visit visit)
{
    visit("res_morning_mean", p.res_morning_mean);
    visit("res_evening_mean", p.res_evening_mean);
    visit("res_morning_sigma", p.res_morning_sigma);
    visit("res_evening_sigma", p.res_evening_sigma);
    visit("com_mean", p.com_mean);
    visit("com_sigma", p.com_sigma);
    visit("w_min", p.w_min);
    visit("w_max", p.w_max);
    visit("w_max_com", p.w_max_com);
    visit("residential_fraction", p.residential_fraction);
}

template <typename Params, typename Visitor>
Json write_block(Params params, Visitor visitor)
{
    Json block = Json::object();
    visitor(params, [&](char const *key, double &value) {
        block[key] = real_out(value);
    });
    return block;
}

template <typename Params, typename Visitor>
Params read_block(Json const &json, std::string const &path, Visitor visitor,
                  Params params, bool partial)
{
    Fields fields(json, path);
    visitor(params, [&](char const *key, double &value) {
        if (partial && !fields.has(key))
            return;
        value = fields.real(key);
    });
    fields.finish();
    return params;
}

Json location_json(Location const &loc)
{
    return Json::array({real_out(loc.x), real_out(loc.y)});
}

Location parse_location(Json const &json, std::string const &path)
{
    if (!json.is_array() || json.size() != 2 || !json[0].is_number()
        || !json[1].is_number())
        throw FormatError(path + ": expected [x, y]");
    return {json[0].get<double>(), json[1].get<double>()};
}

std::string dump(Json const &json) { return json.dump(2) + "\n"; }

std::string fmt(char const *format, double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, value);
    return buffer;
}

}  // namespace

std::string serialize_instance(Instance const &instance)
{
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["id"] = instance.id;
    doc["problem_type"] = to_string(instance.problem_type);
    doc["seed"] = instance.seed;
    doc["extent"] = real_out(instance.extent);
    doc["start_time"] = real_out(instance.start_time);
    doc["depot_config"] = to_string(instance.depot_config);
    doc["fleet"] = {{"num_vehicles", instance.fleet.num_vehicles},
                    {"capacity", instance.fleet.capacity}};
    doc["stochastic"] = write_block(instance.stochastic, [](auto &p, auto visit) {
        visit_stochastic(p, visit);
    });
    doc["tw_params"] = write_block(instance.tw_params, [](auto &p, auto visit) {
        visit_windows(p, visit);
    });

    auto &depots = doc["depots"] = Json::array();
    for (auto const &depot : instance.depots)
        depots.push_back(location_json(depot));

    auto &customers = doc["customers"] = Json::array();
    for (auto const &c : instance.customers)
    {
        Json entry;
        entry["id"] = c.id;
        entry["x"] = real_out(c.location.x);
        entry["y"] = real_out(c.location.y);
        entry["demand"] = c.demand;
        entry["profile"] = to_string(c.profile);
        if (c.has_window)
            entry["window"] = {{"start", real_out(c.window.start)},
                               {"length", real_out(c.window.length)}};
        customers.push_back(std::move(entry));
    }
    return dump(doc);
}

Instance parse_instance(std::string_view text)
{
    auto const doc = parse_json(text, "instance");
    Fields fields(doc, "instance");
    check_version(fields, "instance");

    Instance instance;
    instance.id = fields.text("id");
    instance.problem_type = fields.parsed("problem_type", parse_problem_type);
    instance.seed = fields.unsigned64("seed");
    instance.extent = fields.real("extent");
    instance.start_time = fields.real("start_time");
    instance.depot_config = fields.parsed("depot_config", parse_depot_config);

    Fields fleet(fields.require("fleet"), "instance.fleet");
    instance.fleet.num_vehicles
        = to_int(fleet.integer("num_vehicles"), "instance.fleet.num_vehicles");
    instance.fleet.capacity
        = to_int(fleet.integer("capacity"), "instance.fleet.capacity");
    fleet.finish();

    instance.stochastic = read_block(
        fields.require("stochastic"), "instance.stochastic",
        [](auto &p, auto visit) { visit_stochastic(p, visit); },
        StochasticParams{}, false);
    instance.tw_params = read_block(
        fields.require("tw_params"), "instance.tw_params",
        [](auto &p, auto visit) { visit_windows(p, visit); },
        TimeWindowParams{}, false);

    auto const &depots = fields.array("depots");
    for (std::size_t d = 0; d != depots.size(); ++d)
        instance.depots.push_back(
            parse_location(depots[d], "instance.depots[" + std::to_string(d) + "]"));

    auto const &customers = fields.array("customers");
    for (std::size_t i = 0; i != customers.size(); ++i)
    {
        auto const path = "instance.customers[" + std::to_string(i) + "]";
        Fields entry(customers[i], path);
        Customer c;
        c.id = to_int(entry.integer("id"), path + ".id");
        c.location.x = entry.real("x");
        c.location.y = entry.real("y");
        c.demand = to_int(entry.integer("demand"), path + ".demand");
        c.profile = entry.parsed("profile", parse_profile);
        if (entry.has("window"))
        {
            Fields window(entry.require("window"), path + ".window");
            c.window.start = window.real("start");
            c.window.length = window.real("length");
            c.has_window = true;
            window.finish();
        }
        entry.finish();
        instance.customers.push_back(c);
    }
    fields.finish();

    instance.check_invariants();
    return instance;
}

std::string serialize_solution(Solution const &solution,
                               std::string const &instance_id)
{
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["instance_id"] = instance_id;
    doc["solver"] = solution.solver_name;
    doc["wall_time"] = real_out(solution.wall_time);
    doc["flagged_infeasible"] = solution.flagged_infeasible;
    auto &routes = doc["routes"] = Json::array();
    for (auto const &route : solution.routes)
        routes.push_back({{"depot", route.depot}, {"customers", route.customers}});
    return dump(doc);
}

SolutionDocument parse_solution(std::string_view text)
{
    auto const doc = parse_json(text, "solution");
    Fields fields(doc, "solution");
    check_version(fields, "solution");

    SolutionDocument result;
    result.instance_id = fields.text("instance_id");
    result.solution.solver_name = fields.text("solver");
    result.solution.wall_time = fields.real("wall_time");
    if (fields.has("flagged_infeasible"))
        result.solution.flagged_infeasible = fields.boolean("flagged_infeasible");

    auto const &routes = fields.array("routes");
    for (std::size_t r = 0; r != routes.size(); ++r)
    {
        auto const path = "solution.routes[" + std::to_string(r) + "]";
        Fields entry(routes[r], path);
        Route route;
        route.depot = static_cast<std::size_t>(entry.unsigned64("depot"));
        auto const &ids = entry.array("customers");
        for (auto const &id : ids)
        {
            if (!id.is_number_integer())
                throw FormatError(path + ".customers: expected integers");
            route.customers.push_back(to_int(id.get<long long>(), path + ".customers"));
        }
        entry.finish();
        result.solution.routes.push_back(std::move(route));
    }
    fields.finish();
    return result;
}

SolutionDocument parse_solution(std::string_view text, Instance const &instance)
{
    auto result = parse_solution(text);
    if (result.instance_id != instance.id)
        throw InvariantError("solution references instance '" + result.instance_id
                             + "', expected '" + instance.id + "'");
    auto const coverage = check_coverage(result.solution, instance);
    if (!coverage.ok)
        throw InvariantError("solution: " + coverage.reason);
    for (auto const &route : result.solution.routes)
        if (route.depot >= instance.depots.size())
            throw InvariantError("solution: unknown depot index "
                                 + std::to_string(route.depot));
    if (result.solution.routes.size()
        > static_cast<std::size_t>(instance.fleet.num_vehicles))
        throw InvariantError("solution: more routes than vehicles");
    return result;
}

std::string serialize_report(eval::BenchmarkReport const &report)
{
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["realizations"] = report.realizations;
    doc["seed"] = report.seed;

    auto &rows = doc["rows"] = Json::array();
    for (auto const &row : report.rows)
    {
        Json entry;
        entry["method"] = row.solver_name;
        entry["size"] = row.size;
        entry["problem_type"] = to_string(row.problem_type);
        entry["depot_config"] = to_string(row.depot_config);
        entry["instances"] = row.instances;
        entry["failures"] = row.failures;
        entry["total_cost"] = real_out(row.total_cost);
        entry["cvr_percent"] = real_out(row.cvr_percent);
        entry["feasibility"] = real_out(row.feasibility);
        entry["runtime_s"] = real_out(row.runtime_s);
        entry["robustness"] = real_out(row.robustness);
        rows.push_back(std::move(entry));
    }

    auto &runs = doc["runs"] = Json::array();
    for (auto const &run : report.runs)
    {
        Json entry;
        entry["solver"] = run.solver;
        entry["instance_id"] = run.instance_id;
        entry["size"] = run.size;
        entry["problem_type"] = to_string(run.problem_type);
        entry["depot_config"] = to_string(run.depot_config);
        entry["customers"] = run.customers;
        entry["runtime_s"] = real_out(run.runtime_s);
        entry["planned_cost"] = real_out(run.planned_cost);
        entry["failed"] = run.failed;
        entry["diagnostic"] = run.diagnostic;
        auto &realizations = entry["realizations"] = Json::array();
        for (auto const &r : run.realizations)
            realizations.push_back({{"index", r.realization_index},
                                    {"total_cost", real_out(r.total_cost)},
                                    {"violations", r.violations},
                                    {"late", r.late_customers},
                                    {"over_capacity", r.over_capacity_customers},
                                    {"feasible", r.feasible}});
        runs.push_back(std::move(entry));
    }
    return dump(doc);
}

eval::BenchmarkReport parse_report(std::string_view text)
{
    auto const doc = parse_json(text, "report");
    Fields fields(doc, "report");
    check_version(fields, "report");

    eval::BenchmarkReport report;
    report.realizations = static_cast<std::size_t>(fields.unsigned64("realizations"));
    report.seed = fields.unsigned64("seed");

    auto const &rows = fields.array("rows");
    for (std::size_t i = 0; i != rows.size(); ++i)
    {
        Fields entry(rows[i], "report.rows[" + std::to_string(i) + "]");
        eval::MetricsReport row;
        row.solver_name = entry.text("method");
        row.size = static_cast<int>(entry.integer("size"));
        row.problem_type = entry.parsed("problem_type", parse_problem_type);
        row.depot_config = entry.parsed("depot_config", parse_depot_config);
        row.instances = static_cast<std::size_t>(entry.unsigned64("instances"));
        row.failures = static_cast<std::size_t>(entry.unsigned64("failures"));
        row.total_cost = entry.real("total_cost");
        row.cvr_percent = entry.real("cvr_percent");
        row.feasibility = entry.real("feasibility");
        row.runtime_s = entry.real("runtime_s");
        row.robustness = entry.real("robustness");
        entry.finish();
        report.rows.push_back(std::move(row));
    }

    auto const &runs = fields.array("runs");
    for (std::size_t i = 0; i != runs.size(); ++i)
    {
        auto const path = "report.runs[" + std::to_string(i) + "]";
        Fields entry(runs[i], path);
        eval::RunRecord run;
        run.solver = entry.text("solver");
        run.instance_id = entry.text("instance_id");
        run.size = static_cast<int>(entry.integer("size"));
        run.problem_type = entry.parsed("problem_type", parse_problem_type);
        run.depot_config = entry.parsed("depot_config", parse_depot_config);
        run.customers = static_cast<std::size_t>(entry.unsigned64("customers"));
        run.runtime_s = entry.real("runtime_s");
        run.planned_cost = entry.real("planned_cost");
        run.failed = entry.boolean("failed");
        run.diagnostic = entry.text("diagnostic");
        auto const &realizations = entry.array("realizations");
        for (std::size_t k = 0; k != realizations.size(); ++k)
        {
            Fields item(realizations[k], path + ".realizations[" + std::to_string(k) + "]");
            eval::RealizationResult r;
            r.realization_index = static_cast<std::size_t>(item.unsigned64("index"));
            r.total_cost = item.real("total_cost");
            r.violations = static_cast<int>(item.integer("violations"));
            r.late_customers = static_cast<int>(item.integer("late"));
            r.over_capacity_customers = static_cast<int>(item.integer("over_capacity"));
            r.feasible = item.boolean("feasible");
            item.finish();
            run.realizations.push_back(std::move(r));
        }
        entry.finish();
        report.runs.push_back(std::move(run));
    }
    fields.finish();
    return report;
}

std::string format_report_table(eval::BenchmarkReport const &report)
{
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line,
                  "%-10s %6s %-6s %-18s %14s %8s %12s %12s %14s\n",
                  "Method", "Size", "Type", "Depots", "Total Cost", "CVR (%)",
                  "Feasibility", "Runtime (s)", "Robustness");
    out << line;
    for (auto const &row : report.rows)
    {
        std::snprintf(line, sizeof line,
                      "%-10s %6d %-6s %-18s %14.1f %8.2f %12.3f %12.3f %14.1f\n",
                      row.solver_name.c_str(), row.size,
                      to_string(row.problem_type).c_str(),
                      to_string(row.depot_config).c_str(), row.total_cost,
                      row.cvr_percent, row.feasibility, row.runtime_s,
                      row.robustness);
        out << line;
    }
    out << "(" << report.realizations << " realizations per instance, seed "
        << report.seed << ")\n";
    for (auto const &run : report.runs)
        if (run.failed)
            out << "failed: " << run.solver << " on " << run.instance_id << ": "
                << run.diagnostic << "\n";
    return out.str();
}

generator::GeneratorConfig parse_generator_config(std::string_view text)
{
    auto const doc = parse_json(text, "config");
    Fields fields(doc, "config");
    if (fields.has("format_version"))
        check_version(fields, "config");

    generator::GeneratorConfig config;
    config.n_customers = to_int(fields.integer("n_customers"), "config.n_customers");
    if (fields.has("problem_type"))
        config.problem_type = fields.parsed("problem_type", parse_problem_type);
    if (fields.has("depot_config"))
        config.depot_config = fields.parsed("depot_config", parse_depot_config);
    if (fields.has("num_vehicles"))
    {
        auto const &value = fields.require("num_vehicles");
        if (value.is_string() && value.get<std::string>() == "auto")
            config.num_vehicles.reset();
        else if (value.is_number_integer())
            config.num_vehicles = to_int(value.get<long long>(), "config.num_vehicles");
        else
            throw FormatError("config.num_vehicles: expected an integer or \"auto\"");
    }
    if (fields.has("max_demand"))
        config.max_demand = to_int(fields.integer("max_demand"), "config.max_demand");
    config.extent = fields.real_or("extent", config.extent);
    config.start_time = fields.real_or("start_time", config.start_time);
    if (fields.has("seed"))
        config.seed = fields.unsigned64("seed");
    if (fields.has("id"))
        config.id = fields.text("id");

    if (fields.has("tier"))
    {
        auto const tier = fields.parsed("tier", generator::parse_tier);
        try
        {
            config = generator::apply_tier(config, tier);
        }
        catch (std::invalid_argument const &error)
        {
            throw FormatError(std::string("config.tier: ") + error.what());
        }
    }

    if (fields.has("stochastic"))
        config.stochastic = read_block(
            fields.require("stochastic"), "config.stochastic",
            [](auto &p, auto visit) { visit_stochastic(p, visit); },
            config.stochastic, true);
    if (fields.has("tw_params"))
        config.tw_params = read_block(
            fields.require("tw_params"), "config.tw_params",
            [](auto &p, auto visit) { visit_windows(p, visit); },
            config.tw_params, true);
    fields.finish();

    try
    {
        config.validate();
    }
    catch (std::invalid_argument const &error)
    {
        throw FormatError(std::string("config: ") + error.what());
    }
    return config;
}

std::string serialize_generator_config(generator::GeneratorConfig const &config)
{
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["n_customers"] = config.n_customers;
    doc["problem_type"] = to_string(config.problem_type);
    doc["depot_config"] = to_string(config.depot_config);
    if (config.num_vehicles)
        doc["num_vehicles"] = *config.num_vehicles;
    else
        doc["num_vehicles"] = "auto";
    doc["max_demand"] = config.max_demand;
    doc["extent"] = real_out(config.extent);
    doc["start_time"] = real_out(config.start_time);
    doc["seed"] = config.seed;
    if (!config.id.empty())
        doc["id"] = config.id;
    doc["stochastic"] = write_block(config.stochastic, [](auto &p, auto visit) {
        visit_stochastic(p, visit);
    });
    doc["tw_params"] = write_block(config.tw_params, [](auto &p, auto visit) {
        visit_windows(p, visit);
    });
    return dump(doc);
}

std::string export_cvrplib(Instance const &instance)
{
    std::ostringstream out;
    auto const depots = instance.depots.size();
    out << "NAME : " << instance.id << "\n";
    out << "COMMENT : projection without time windows or stochastic parameters\n";
    out << "TYPE : CVRP\n";
    out << "DIMENSION : " << instance.num_nodes() << "\n";
    out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
    out << "CAPACITY : " << instance.fleet.capacity << "\n";
    out << "VEHICLES : " << instance.fleet.num_vehicles << "\n";
    out << "NODE_COORD_SECTION\n";
    for (std::size_t node = 0; node != instance.num_nodes(); ++node)
    {
        auto const &loc = instance.node_location(node);
        out << node + 1 << " " << fmt("%.9g", loc.x) << " " << fmt("%.9g", loc.y)
            << "\n";
    }
    out << "DEMAND_SECTION\n";
    for (std::size_t d = 0; d != depots; ++d)
        out << d + 1 << " 0\n";
    for (auto const &c : instance.customers)
        out << depots + c.id << " " << c.demand << "\n";
    out << "DEPOT_SECTION\n";
    for (std::size_t d = 0; d != depots; ++d)
        out << d + 1 << "\n";
    out << "-1\nEOF\n";
    return out.str();
}

std::string read_file(std::filesystem::path const &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(std::filesystem::path const &path, std::string_view content)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace svrp::io
