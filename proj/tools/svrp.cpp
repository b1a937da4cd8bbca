#include "svrp/eval.hpp"
#include "svrp/generator.hpp"
#include "svrp/io.hpp"
#include "svrp/solvers.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace svrp;

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct GenerateArgs {
    std::string config;
    int n = 0;
    std::string type;
    std::string depots;
    int vehicles = 0;
    int max_demand = 0;
    double extent = 0.0;
    std::string tier;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
};

struct SolveArgs {
    std::string in;
    std::string solver = "nn2opt";
    std::uint64_t seed = 0;
    std::string out;
    std::string external_cmd;
};

struct EvaluateArgs {
    std::string instances;
    std::string solutions;
    std::size_t realizations = 5;
    std::uint64_t seed = 0;
    std::string report;
};

std::vector<fs::path> json_files(fs::path const &dir)
{
    if (!fs::is_directory(dir))
        throw std::runtime_error("'" + dir.string() + "' is not a directory");
    std::vector<fs::path> files;
    for (auto const &entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

int run_generate(GenerateArgs const &args, CLI::App const &cmd)
{
    generator::GeneratorConfig config;
    if (!args.config.empty())
        config = io::parse_generator_config(io::read_file(args.config));
    if (cmd.count("--n"))
        config.n_customers = args.n;
    if (cmd.count("--type"))
        config.problem_type = parse_problem_type(args.type);
    if (cmd.count("--depots"))
        config.depot_config = parse_depot_config(args.depots);
    if (cmd.count("--vehicles"))
        config.num_vehicles = args.vehicles;
    if (cmd.count("--max-demand"))
        config.max_demand = args.max_demand;
    if (cmd.count("--extent"))
        config.extent = args.extent;
    if (cmd.count("--seed"))
        config.seed = args.seed;
    if (cmd.count("--tier"))
        config = generator::apply_tier(config, generator::parse_tier(args.tier));

    auto const instance = generator::generate_instance(config);
    io::write_file(args.out, io::serialize_instance(instance));
    return 0;
}

int run_validate(std::string const &path)
{
    auto const instance = io::parse_instance(io::read_file(path));
    auto const verdict = generator::validate_instance(instance);
    if (!verdict.feasible)
    {
        std::cerr << "infeasible: " << verdict.reason << "\n";
        return kDomainError;
    }
    std::cerr << instance.id << ": ok (" << instance.num_customers()
              << " customers, demand " << verdict.total_demand << ", capacity "
              << verdict.total_capacity << ")\n";
    return 0;
}

int run_solve(SolveArgs const &args)
{
    auto const instance = io::parse_instance(io::read_file(args.in));
    solvers::SolverOptions options;
    options.external_command = args.external_cmd;
    auto const solver = solvers::make_solver(args.solver, options);

    PlanningMatrix const matrix(instance);
    auto const seed = derive_seed(args.seed, solver->name(), instance.seed);
    auto const solution = solver->solve(instance, matrix, seed);
    io::write_file(args.out, io::serialize_solution(solution, instance.id));

    if (solution.flagged_infeasible)
    {
        std::cerr << "solution written but infeasible under planned travel times\n";
        return kDomainError;
    }
    return 0;
}

int run_evaluate(EvaluateArgs const &args)
{
    std::vector<Instance> instances;
    for (auto const &path : json_files(args.instances))
        instances.push_back(io::parse_instance(io::read_file(path)));

    std::vector<Solution> solutions;
    std::vector<std::string> ids;
    for (auto const &path : json_files(args.solutions))
    {
        auto doc = io::parse_solution(io::read_file(path));
        ids.push_back(std::move(doc.instance_id));
        solutions.push_back(std::move(doc.solution));
    }
    if (solutions.empty())
        throw std::runtime_error("no solution files in '" + args.solutions + "'");

    eval::BenchmarkOptions options;
    options.realizations = args.realizations;
    options.seed = args.seed;
    auto const report = eval::evaluate_solutions(instances, solutions, ids, options);
    io::write_file(args.report, io::serialize_report(report));

    for (auto const &run : report.runs)
        if (run.failed)
            std::cerr << "failed: " << run.instance_id << ": " << run.diagnostic << "\n";
    return 0;
}

int run_report(std::string const &path, std::string const &format)
{
    auto const report = io::parse_report(io::read_file(path));
    if (format == "json")
        std::cout << io::serialize_report(report);
    else
        std::cout << io::format_report_table(report);
    return 0;
}

int run_export(std::string const &in, std::string const &out)
{
    auto const instance = io::parse_instance(io::read_file(in));
    io::write_file(out, io::export_cvrplib(instance));
    return 0;
}

}  // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Stochastic vehicle routing benchmark toolkit"};
    app.require_subcommand(1);

    auto const problem_types = CLI::IsMember({"cvrp", "twvrp"}, CLI::ignore_case);
    auto const depot_configs = CLI::IsMember(
        {"single", "multi_random", "depots_equal_city", "multi", "city"},
        CLI::ignore_case);

    GenerateArgs gen;
    auto *generate = app.add_subcommand("generate", "Generate an instance");
    generate->add_option("--config", gen.config, "Generator config file")
        ->check(CLI::ExistingFile);
    generate->add_option("--n", gen.n, "Number of customers")
        ->check(CLI::PositiveNumber);
    generate->add_option("--type", gen.type, "cvrp or twvrp")->check(problem_types);
    generate->add_option("--depots", gen.depots, "single, multi_random or depots_equal_city")
        ->check(depot_configs);
    generate->add_option("--vehicles", gen.vehicles, "Fleet size (default ceil(n/25))")
        ->check(CLI::PositiveNumber);
    generate->add_option("--max-demand", gen.max_demand, "Largest customer demand")
        ->check(CLI::PositiveNumber);
    generate->add_option("--extent", gen.extent, "Side of the square region (km)")
        ->check(CLI::PositiveNumber);
    generate->add_option("--tier", gen.tier, "small, medium or large")
        ->check(CLI::IsMember({"small", "medium", "large"}, CLI::ignore_case));
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--out", gen.out, "Output instance file")->required();

    std::string validate_in;
    auto *validate = app.add_subcommand("validate", "Check an instance file");
    validate->add_option("--in", validate_in)->required()->check(CLI::ExistingFile);

    SolveArgs solve_args;
    auto *solve = app.add_subcommand("solve", "Plan routes for an instance");
    solve->add_option("--in", solve_args.in)->required()->check(CLI::ExistingFile);
    solve->add_option("--solver", solve_args.solver)
        ->check(CLI::IsMember({"nn2opt", "tabu", "aco", "external"}));
    solve->add_option("--seed", solve_args.seed);
    solve->add_option("--out", solve_args.out)->required();
    solve->add_option("--external-cmd", solve_args.external_cmd,
                      "Command run as: <cmd> <instance.json> <solution.json>");

    EvaluateArgs eval_args;
    auto *evaluate = app.add_subcommand("evaluate", "Score solutions over realizations");
    evaluate->add_option("--instances", eval_args.instances)
        ->required()->check(CLI::ExistingDirectory);
    evaluate->add_option("--solutions", eval_args.solutions)
        ->required()->check(CLI::ExistingDirectory);
    evaluate->add_option("--realizations", eval_args.realizations)
        ->check(CLI::PositiveNumber);
    evaluate->add_option("--seed", eval_args.seed);
    evaluate->add_option("--report", eval_args.report)->required();

    std::string report_in;
    std::string report_format = "table";
    auto *report = app.add_subcommand("report", "Print a report file");
    report->add_option("--in", report_in)->required()->check(CLI::ExistingFile);
    report->add_option("--format", report_format)->check(CLI::IsMember({"json", "table"}));

    std::string export_in, export_out;
    auto *exporter = app.add_subcommand("export-cvrplib", "Lossy CVRPLIB projection");
    exporter->add_option("--in", export_in)->required()->check(CLI::ExistingFile);
    exporter->add_option("--out", export_out)->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const &error)
    {
        auto const code = app.exit(error);
        return code == 0 ? 0 : kUsageError;
    }

    if (*solve && solve_args.solver == "external" && solve_args.external_cmd.empty())
    {
        std::cerr << "solve: --solver external requires --external-cmd\n";
        return kUsageError;
    }

    try
    {
        if (*generate)
            return run_generate(gen, *generate);
        if (*validate)
            return run_validate(validate_in);
        if (*solve)
            return run_solve(solve_args);
        if (*evaluate)
            return run_evaluate(eval_args);
        if (*report)
            return run_report(report_in, report_format);
        if (*exporter)
            return run_export(export_in, export_out);
    }
    catch (std::exception const &error)
    {
        std::cerr << "error: " << error.what() << "\n";
        return kDomainError;
    }
    return kUsageError;
}
