#include "cartmap/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cartmap/io.hpp"
#include "cartmap/oracle.hpp"
#include "cartmap/sweep.hpp"

namespace cartmap::cli {

using nlohmann::json;

namespace {

std::vector<i64> parse_int_list(const std::string &text, char sep) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty())
      throw validation_error("empty entry in list '" + text + "'");
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw validation_error("cannot parse integer '" + item + "' in '" +
                             text + "'");
    }
  }
  if (out.empty())
    throw validation_error("empty list '" + text + "'");
  return out;
}

struct GridArgs {
  std::string dims;
  i64 p = 0;
  int ndims = 0;
  std::string periods;

  Grid build() const {
    std::vector<i64> dim_list;
    if (!dims.empty()) {
      dim_list = parse_int_list(dims, 'x');
    } else if (p > 0 && ndims > 0) {
      dim_list = dims_create(p, ndims);
    } else {
      throw validation_error("specify the grid with --dims or with --p and "
                             "--ndims");
    }
    std::vector<bool> period_flags;
    if (!periods.empty()) {
      for (i64 v : parse_int_list(periods, ','))
        period_flags.push_back(v != 0);
    }
    return Grid(std::move(dim_list), std::move(period_flags));
  }
};

struct StencilArgs {
  std::string stencil;
  std::string flat;

  Stencil build(int ndims) const {
    if (!flat.empty()) {
      const auto colon = flat.find(':');
      if (colon == std::string::npos)
        throw validation_error("--flat expects k:offsets, e.g. 4:1,0,-1,0,...");
      i64 k = 0;
      try {
        k = std::stoll(flat.substr(0, colon));
      } catch (const std::exception &) {
        throw validation_error("cannot parse neighbor count in --flat");
      }
      return parse_flat(ndims, k, parse_int_list(flat.substr(colon + 1), ','));
    }
    if (stencil.empty())
      throw validation_error("specify a stencil with --stencil or --flat");
    if (stencil == "nn" || stencil == "nearest-neighbor" ||
        stencil == "component" || stencil == "nn-hops")
      return builtin_stencil(stencil, ndims);
    return io::load_stencil_json(stencil);
  }
};

struct NodeArgs {
  i64 n = 0;
  std::string sizes;
  std::string aggregate = "mean";

  NodeConfig build(i64 p) const {
    const AggregateRule rule = aggregate_rule_from_string(aggregate);
    if (!sizes.empty()) {
      NodeConfig nodes(parse_int_list(sizes, ','), rule);
      if (nodes.total() != p)
        throw validation_error("node sizes sum to " +
                               std::to_string(nodes.total()) + ", grid has " +
                               std::to_string(p));
      return nodes;
    }
    if (n < 1)
      throw validation_error("specify nodes with --n or --sizes");
    if (p % n != 0)
      throw validation_error("p = " + std::to_string(p) +
                             " is not divisible by n = " + std::to_string(n) +
                             "; use --sizes for heterogeneous nodes");
    NodeConfig nodes = NodeConfig::homogeneous(p / n, n);
    nodes.rule = rule;
    return nodes;
  }
};

// Writes to the path, or to `out` when the path is empty.
class OutputTarget {
public:
  OutputTarget(const std::string &path, std::ostream &out) : fallback_(out) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw validation_error("cannot open output file " + path);
    }
  }
  std::ostream &stream() { return file_.is_open() ? file_ : fallback_; }

private:
  std::ofstream file_;
  std::ostream &fallback_;
};

int cmd_map(const GridArgs &grid_args, const StencilArgs &stencil_args,
            const NodeArgs &node_args, const std::string &algo,
            std::uint64_t seed, const std::string &output, std::ostream &out,
            std::ostream &err) {
  const Grid grid = grid_args.build();
  const Stencil stencil = stencil_args.build(grid.ndims());
  const NodeConfig nodes = node_args.build(grid.size());
  const i64 n = nodes.aggregate();

  io::InstanceSpec spec{grid, stencil, nodes, algo, std::nullopt, ""};
  std::optional<RankMapping> mapping;
  if (algo == "blocked") {
    mapping = blocked_map(grid);
  } else if (algo == "random") {
    mapping = random_map(grid, seed);
    spec.seed = seed;
  } else if (algo == "hyperplane") {
    mapping = hyperplane_map(grid, stencil, n);
  } else if (algo == "kdtree") {
    mapping = kdtree_map(grid, stencil);
  } else if (algo == "strips") {
    mapping = strips_map(grid, stencil, n);
  } else if (algo == "nodecart") {
    try {
      mapping = nodecart_map(grid, n);
    } catch (const infeasible_error &e) {
      err << "warning: " << e.what() << "; falling back to blocked\n";
      mapping = blocked_map(grid);
      mapping->algorithm = "nodecart";
      spec.flags = "infeasible_fallback_blocked";
    }
  } else {
    throw validation_error("unknown algorithm '" + algo + "'");
  }

  OutputTarget target(output, out);
  io::write_mapping(target.stream(), spec, *mapping);
  return 0;
}

int cmd_eval(const std::string &mapping_path, std::ostream &out) {
  std::ifstream in(mapping_path);
  if (!in)
    throw validation_error("cannot open mapping file " + mapping_path);
  const io::LoadedMapping loaded = io::read_mapping(in);
  const auto &spec = loaded.spec;

  const CostReport rep =
      evaluate(spec.grid, spec.stencil, loaded.mapping, spec.nodes);
  const CostReport base =
      evaluate(spec.grid, spec.stencil, blocked_map(spec.grid), spec.nodes);
  const Reduction red = reduction(rep, base);

  json result{{"algorithm", spec.algorithm},
              {"j_sum", rep.j_sum},
              {"j_max", rep.j_max},
              {"per_node", rep.per_node},
              {"bottleneck_node", rep.bottleneck_node},
              {"reduction_vs_blocked",
               {{"sum", red.sum_ratio}, {"max", red.max_ratio}}},
              {"fingerprint", rep.fingerprint}};
  out << result.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const SweepSpec &spec, const std::string &output,
              std::ostream &out) {
  OutputTarget target(output, out);
  write_sweep_csv(target.stream(), run_sweep(spec));
  return 0;
}

int cmd_oracle_np_gen(const std::string &multiset, std::ostream &out) {
  const NpInstance inst = three_way_to_grid(parse_int_list(multiset, ','));
  json result{{"multiset", inst.multiset},
              {"dims", inst.grid.dims},
              {"offsets", inst.stencil.offsets},
              {"node_sizes", inst.node_sizes},
              {"q", inst.q}};
  out << result.dump(2) << "\n";
  return 0;
}

int cmd_oracle_solve(const std::string &np, const GridArgs &grid_args,
                     const StencilArgs &stencil_args, const std::string &sizes,
                     i64 limit, std::ostream &out) {
  std::optional<Grid> grid;
  std::optional<Stencil> stencil;
  std::vector<i64> node_sizes;
  if (!np.empty()) {
    NpInstance inst = three_way_to_grid(parse_int_list(np, ','));
    grid = std::move(inst.grid);
    stencil = std::move(inst.stencil);
    node_sizes = std::move(inst.node_sizes);
  } else {
    grid = grid_args.build();
    stencil = stencil_args.build(grid->ndims());
    if (sizes.empty())
      throw validation_error("specify node sizes with --sizes or an "
                             "instance with --np");
    node_sizes = parse_int_list(sizes, ',');
  }

  const OracleResult res = brute_force_optimal(*grid, *stencil, node_sizes, limit);
  json result{{"optimal_j_sum", res.optimal_j_sum},
              {"witness", res.node_of_vertex},
              {"nodes_expanded", res.nodes_expanded},
              {"dims", grid->dims},
              {"node_sizes", node_sizes}};
  out << result.dump(2) << "\n";
  return 0;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Process-to-node mappings for Cartesian grids with "
               "k-neighborhood stencils"};
  app.name("cartmap");
  app.require_subcommand(1);

  GridArgs grid_args;
  StencilArgs stencil_args;
  NodeArgs node_args;
  std::string algo, output, mapping_path;
  std::uint64_t seed = 1;

  auto add_grid_options = [&](CLI::App *cmd) {
    cmd->add_option("--dims", grid_args.dims, "Grid dimensions, e.g. 5x4");
    cmd->add_option("--p", grid_args.p, "Process count (with --ndims)");
    cmd->add_option("--ndims", grid_args.ndims,
                    "Dimension count for the balanced factorization of --p");
    cmd->add_option("--periods", grid_args.periods,
                    "Per-dimension wraparound flags, e.g. 0,1");
  };
  auto add_stencil_options = [&](CLI::App *cmd) {
    cmd->add_option("--stencil", stencil_args.stencil,
                    "Builtin stencil (nn, component, nn-hops) or a JSON file");
    cmd->add_option("--flat", stencil_args.flat,
                    "Flattened offsets as k:list, e.g. 2:1,0,-1,0");
  };

  CLI::App *map_cmd =
      app.add_subcommand("map", "Compute a rank reordering and write it out");
  add_grid_options(map_cmd);
  add_stencil_options(map_cmd);
  map_cmd->add_option("--algo", algo, "Mapping algorithm")->required();
  map_cmd->add_option("--n", node_args.n, "Processes per node (homogeneous)");
  map_cmd->add_option("--sizes", node_args.sizes,
                      "Per-node process counts, e.g. 4,4,4");
  map_cmd->add_option("--aggregate", node_args.aggregate,
                      "Aggregate rule for heterogeneous sizes (mean|min|max)");
  map_cmd->add_option("--seed", seed, "Seed for the random baseline");
  map_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  CLI::App *eval_cmd =
      app.add_subcommand("eval", "Evaluate the cut cost of a mapping file");
  eval_cmd->add_option("mapping", mapping_path, "Mapping file to evaluate")
      ->required();

  SweepSpec sweep_spec = SweepSpec::defaults();
  std::string sweep_nodes, sweep_procs, sweep_dims, sweep_stencils;
  CLI::App *sweep_cmd = app.add_subcommand(
      "sweep", "Run every algorithm over the instance sweep, emit CSV");
  sweep_cmd->add_option("--nodes", sweep_nodes, "Node counts, e.g. 10,13,16");
  sweep_cmd->add_option("--procs", sweep_procs, "Processes per node");
  sweep_cmd->add_option("--dims-set", sweep_dims, "Dimension counts, e.g. 2,3");
  sweep_cmd->add_option("--stencils", sweep_stencils,
                        "Stencil names, e.g. nn,component");
  sweep_cmd->add_option("--seed", sweep_spec.seed,
                        "Seed for the random baseline");
  sweep_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  CLI::App *oracle_cmd =
      app.add_subcommand("oracle", "Exact solver and reduction fixtures");
  oracle_cmd->require_subcommand(1);
  std::string np_multiset, solve_np, solve_sizes;
  i64 oracle_limit = kDefaultOracleLimit;
  CLI::App *np_gen_cmd = oracle_cmd->add_subcommand(
      "np-gen", "Build the grid instance of a 3-way-partition multiset");
  np_gen_cmd->add_option("multiset", np_multiset, "Multiset, e.g. 6,3,3,2,2,2")
      ->required();
  CLI::App *solve_cmd = oracle_cmd->add_subcommand(
      "solve", "Exact minimum cut for a small instance");
  solve_cmd->add_option("--np", solve_np,
                        "Solve the instance of this 3-way-partition multiset");
  add_grid_options(solve_cmd);
  add_stencil_options(solve_cmd);
  solve_cmd->add_option("--sizes", solve_sizes, "Node sizes, e.g. 6,6");
  solve_cmd->add_option("--limit", oracle_limit,
                        "Refuse instances with more processes than this");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    std::stringstream msg;
    const int code = app.exit(e, msg, msg);
    (code == 0 ? out : err) << msg.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (map_cmd->parsed())
      return cmd_map(grid_args, stencil_args, node_args, algo, seed, output,
                     out, err);
    if (eval_cmd->parsed())
      return cmd_eval(mapping_path, out);
    if (sweep_cmd->parsed()) {
      if (!sweep_nodes.empty())
        sweep_spec.node_counts = parse_int_list(sweep_nodes, ',');
      if (!sweep_procs.empty())
        sweep_spec.procs_per_node = parse_int_list(sweep_procs, ',');
      if (!sweep_dims.empty()) {
        sweep_spec.dims_set.clear();
        for (i64 d : parse_int_list(sweep_dims, ','))
          sweep_spec.dims_set.push_back(static_cast<int>(d));
      }
      if (!sweep_stencils.empty()) {
        sweep_spec.stencils.clear();
        std::stringstream ss(sweep_stencils);
        std::string item;
        while (std::getline(ss, item, ','))
          sweep_spec.stencils.push_back(item);
      }
      return cmd_sweep(sweep_spec, output, out);
    }
    if (np_gen_cmd->parsed())
      return cmd_oracle_np_gen(np_multiset, out);
    if (solve_cmd->parsed())
      return cmd_oracle_solve(solve_np, grid_args, stencil_args, solve_sizes,
                              oracle_limit, out);
  } catch (const refusal_error &e) {
    err << "refused: " << e.what() << "\n";
    return 3;
  } catch (const validation_error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

} // namespace cartmap::cli
