// rolevec: structural node embeddings from the command line.
//
//   rolevec embed     edge list -> embedding file (+ run manifest)
//   rolevec generate  benchmark graphs (barbell, mirror, er, edgesample)
//   rolevec eval      distance reports, correlations, classification, scaling

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rolevec/rolevec.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct EmbedArgs {
  std::string graph_path;
  std::string output = "embedding.txt";
  std::string preset;
  std::string from_manifest;
  std::string save_distances;
  std::string save_corpus;

  std::optional<int> layers;
  std::optional<double> stay_prob;
  std::optional<int> walks;
  std::optional<int> walk_length;
  std::optional<int> window;
  std::optional<int> dim;
  std::optional<std::string> objective;
  std::optional<int> negative;
  std::optional<int> epochs;
  std::optional<double> learning_rate;
  std::optional<std::uint64_t> seed;
  std::optional<bool> opt1;
  std::optional<bool> opt2;
  std::optional<int> opt3;
  bool no_opt3 = false;
  bool baseline_plain = false;
  bool no_dynamic_window = false;
  int threads = 1;
};

struct ResolvedRun {
  rolevec::PipelineOptions options;
  bool dynamic_window = true;
  std::string objective_name = "hs";
};

void apply_preset(const std::string& name, EmbedArgs& a) {
  auto defaulted = [](auto& opt, auto value) {
    if (!opt) opt = value;
  };
  if (name == "barbell") {
    defaulted(a.walks, 20);
    defaulted(a.walk_length, 80);
    defaulted(a.window, 5);
    defaulted(a.dim, 2);
    defaulted(a.epochs, 5);
    defaulted(a.objective, std::string("hs"));
  } else if (name == "karate") {
    defaulted(a.walks, 5);
    defaulted(a.walk_length, 15);
    defaulted(a.window, 3);
    defaulted(a.dim, 2);
    defaulted(a.epochs, 20);
    defaulted(a.objective, std::string("hs"));
  } else if (name == "scale") {
    defaulted(a.dim, 128);
    defaulted(a.walks, 10);
    defaulted(a.walk_length, 80);
    defaulted(a.window, 10);
    defaulted(a.epochs, 1);
    defaulted(a.objective, std::string("ns"));
    defaulted(a.opt1, true);
    defaulted(a.opt2, true);
  } else {
    throw CLI::ValidationError("--preset", "unknown preset: " + name);
  }
}

ResolvedRun resolve_options(EmbedArgs& a) {
  if (!a.preset.empty()) apply_preset(a.preset, a);

  ResolvedRun run;
  rolevec::PipelineOptions& o = run.options;
  o.similarity.compress_sequences = a.opt1.value_or(false);
  o.similarity.neighbor_limit = a.opt2.value_or(false);
  if (a.layers)
    o.similarity.layer_cap = *a.layers;
  else if (a.opt3)
    o.similarity.layer_cap = *a.opt3;
  if (a.no_opt3) o.similarity.layer_cap.reset();

  o.stay_probability = a.stay_prob.value_or(0.7);
  o.walks_per_node = a.walks.value_or(10);
  o.walk_length = a.walk_length.value_or(80);
  o.train.window = a.window.value_or(5);
  o.train.dimensions = a.dim.value_or(2);
  o.train.epochs = a.epochs.value_or(5);
  o.train.initial_learning_rate = static_cast<float>(a.learning_rate.value_or(0.025));
  run.objective_name = a.objective.value_or("hs");
  if (run.objective_name == "hs")
    o.train.objective = rolevec::Objective::kHierarchicalSoftmax;
  else if (run.objective_name == "ns")
    o.train.objective = rolevec::Objective::kNegativeSampling;
  else
    throw CLI::ValidationError("--objective", "expected hs or ns");
  o.train.negative_samples = a.negative.value_or(5);
  run.dynamic_window = !a.no_dynamic_window;
  o.train.dynamic_window = run.dynamic_window;
  o.seed = a.seed.value_or(1);
  o.baseline_plain = a.baseline_plain;
  o.threads = a.threads;
  return run;
}

void load_args_from_manifest(const std::string& path, EmbedArgs& a) {
  rolevec::Manifest m = rolevec::Manifest::load(path);
  a.graph_path = m.get("graph");
  if (a.output == "embedding.txt") a.output = m.get_or("output", a.output);
  auto set_int = [&](const char* key, std::optional<int>& dst) {
    if (m.has(key)) dst = std::stoi(m.get(key));
  };
  set_int("layers", a.layers);
  set_int("walks", a.walks);
  set_int("walk_length", a.walk_length);
  set_int("window", a.window);
  set_int("dim", a.dim);
  set_int("negative", a.negative);
  set_int("epochs", a.epochs);
  if (m.has("stay_prob")) a.stay_prob = std::stod(m.get("stay_prob"));
  if (m.has("learning_rate")) a.learning_rate = std::stod(m.get("learning_rate"));
  if (m.has("objective")) a.objective = m.get("objective");
  if (m.has("seed")) a.seed = std::stoull(m.get("seed"));
  if (m.has("opt1")) a.opt1 = m.get("opt1") == "1";
  if (m.has("opt2")) a.opt2 = m.get("opt2") == "1";
  if (m.get_or("opt3", "off") != "off") a.opt3 = std::stoi(m.get("opt3"));
  a.baseline_plain = m.get_or("baseline_plain", "0") == "1";
  a.no_dynamic_window = m.get_or("dynamic_window", "1") == "0";
  if (m.has("threads")) a.threads = std::stoi(m.get("threads"));
}

rolevec::Manifest build_manifest(const EmbedArgs& a, const ResolvedRun& run) {
  const rolevec::PipelineOptions& o = run.options;
  rolevec::Manifest m;
  m.set("tool", std::string("rolevec"));
  m.set("version", std::string(kVersion));
  m.set("command", std::string("embed"));
  m.set("graph", a.graph_path);
  m.set("output", a.output);
  m.set("seed", o.seed);
  m.set("threads", o.threads);
  m.set("opt1", o.similarity.compress_sequences ? 1 : 0);
  m.set("opt2", o.similarity.neighbor_limit ? 1 : 0);
  if (o.similarity.layer_cap)
    m.set("opt3", *o.similarity.layer_cap);
  else
    m.set("opt3", std::string("off"));
  if (o.similarity.layer_cap) m.set("layers", *o.similarity.layer_cap);
  m.set("stay_prob", o.stay_probability);
  m.set("walks", o.walks_per_node);
  m.set("walk_length", o.walk_length);
  m.set("window", o.train.window);
  m.set("dim", o.train.dimensions);
  m.set("objective", run.objective_name);
  m.set("negative", o.train.negative_samples);
  m.set("epochs", o.train.epochs);
  m.set("learning_rate", o.train.initial_learning_rate);
  m.set("dynamic_window", run.dynamic_window ? 1 : 0);
  m.set("baseline_plain", o.baseline_plain ? 1 : 0);
  return m;
}

int cmd_embed(EmbedArgs& args) {
  if (!args.from_manifest.empty()) load_args_from_manifest(args.from_manifest, args);
  if (args.graph_path.empty()) throw CLI::ValidationError("embed", "no input graph given");
  ResolvedRun run = resolve_options(args);

  rolevec::LoadReport report;
  rolevec::Graph g = rolevec::load_edge_list(args.graph_path, &report, &std::cerr);
  rolevec::PipelineResult result = rolevec::run_embed_pipeline(g, run.options);

  rolevec::save_embedding(result.embedding, g.labels(), args.output);
  if (!args.save_distances.empty() && !result.distances.pairs.empty())
    rolevec::save_distance_table(result.distances, args.save_distances);

  rolevec::Manifest manifest = build_manifest(args, run);
  for (const auto& t : result.timings) manifest.set("time." + t.stage, t.seconds);
  manifest.save(args.output + ".manifest");

  std::cerr << "wrote " << args.output << " (" << result.embedding.vectors.rows << " x "
            << result.embedding.vectors.cols << ")";
  for (const auto& t : result.timings)
    std::cerr << "  " << t.stage << " " << t.seconds << "s";
  std::cerr << "\n";
  return 0;
}

std::vector<std::pair<std::string, std::string>> load_label_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string a, b;
  while (in >> a >> b) out.emplace_back(a, b);
  return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  for (const auto& row : rows) out << row << "\n";
}

int cmd_eval_pairs(const std::string& emb_path, const std::string& pairs_path,
                   const std::string& csv_path) {
  rolevec::LoadedEmbedding emb = rolevec::load_embedding(emb_path);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [a, b] : load_label_pairs(pairs_path))
    pairs.emplace_back(emb.require_label(a), emb.require_label(b));
  rolevec::PairDistanceReport rep = rolevec::pair_distance_report(emb.vectors, pairs);

  std::printf("pair distance report (%zu special pairs, %zu total pairs)\n",
              rep.special_distances.size(), rep.all_distances.size());
  std::printf("  special: mean %.6f  std %.6f\n", rep.special_mean, rep.special_std);
  std::printf("  all:     mean %.6f  std %.6f\n", rep.all_mean, rep.all_std);
  std::printf("  ratio all/special: %.4f\n", rep.ratio);

  if (!csv_path.empty()) {
    std::vector<std::string> rows{"metric,value"};
    auto add = [&](const std::string& k, double v) {
      std::ostringstream ss;
      ss << k << "," << v;
      rows.push_back(ss.str());
    };
    add("special_mean", rep.special_mean);
    add("special_std", rep.special_std);
    add("all_mean", rep.all_mean);
    add("all_std", rep.all_std);
    add("ratio", rep.ratio);
    write_csv(csv_path, rows);
  }
  return 0;
}

int cmd_eval_correlation(const std::string& emb_path, const std::string& dist_path,
                         const std::string& layers_csv, const std::string& csv_path) {
  rolevec::LoadedEmbedding emb = rolevec::load_embedding(emb_path);
  rolevec::DistanceTable table = rolevec::load_distance_table(dist_path);
  // the distance dump stores dense ids assigned at load time, which match
  // the embedding row order written by embed
  std::vector<int> layers;
  std::stringstream ss(layers_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) layers.push_back(std::stoi(tok));

  std::vector<std::string> rows{"layer,pearson,pearson_p,spearman,spearman_p,pairs"};
  std::printf("layer  pearson (p)        spearman (p)       pairs\n");
  for (int layer : layers) {
    rolevec::CorrelationResult r = rolevec::distance_correlation(table, emb.vectors, layer);
    std::printf("%5d  %7.4f (%.2e)  %7.4f (%.2e)  %zu\n", layer, r.pearson, r.pearson_p,
                r.spearman, r.spearman_p, r.pair_count);
    std::ostringstream row;
    row << layer << "," << r.pearson << "," << r.pearson_p << "," << r.spearman << ","
        << r.spearman_p << "," << r.pair_count;
    rows.push_back(row.str());
  }
  if (!csv_path.empty()) write_csv(csv_path, rows);
  return 0;
}

int cmd_eval_classify(const std::string& emb_path, const std::string& labels_path,
                      const std::string& activity_path, const std::string& graph_path,
                      bool use_degree, double train_fraction, int repeats,
                      std::uint64_t seed, const std::string& csv_path) {
  // labels, either explicit or from activity-score quartiles
  std::vector<std::pair<std::string, std::string>> raw =
      load_label_pairs(labels_path.empty() ? activity_path : labels_path);

  rolevec::Matrix<double> features;
  std::vector<std::string> node_order;
  if (use_degree) {
    if (graph_path.empty())
      throw CLI::ValidationError("--degree", "degree features need --graph");
    rolevec::Graph g = rolevec::load_edge_list(graph_path);
    features = rolevec::degree_features(g);
    node_order = g.labels();
  } else {
    rolevec::LoadedEmbedding emb = rolevec::load_embedding(emb_path);
    features = rolevec::embedding_features(emb.vectors);
    node_order = emb.labels;
  }

  std::unordered_map<std::string, std::string> by_label(raw.begin(), raw.end());
  std::vector<int> labels(node_order.size());
  if (!labels_path.empty()) {
    for (std::size_t i = 0; i < node_order.size(); ++i) {
      auto it = by_label.find(node_order[i]);
      if (it == by_label.end())
        throw std::runtime_error("label file misses node " + node_order[i]);
      labels[i] = std::stoi(it->second);
    }
  } else {
    std::vector<double> activity(node_order.size());
    for (std::size_t i = 0; i < node_order.size(); ++i) {
      auto it = by_label.find(node_order[i]);
      if (it == by_label.end())
        throw std::runtime_error("activity file misses node " + node_order[i]);
      activity[i] = std::stod(it->second);
    }
    labels = rolevec::quartile_labels(activity);
  }

  double acc = rolevec::classification_accuracy(features, labels, train_fraction, repeats, seed);
  std::printf("mean accuracy over %d repeats (train fraction %.2f): %.4f\n", repeats,
              train_fraction, acc);
  if (!csv_path.empty()) {
    std::ostringstream row;
    row << "mean_accuracy," << acc;
    write_csv(csv_path, {"metric,value", row.str()});
  }
  return 0;
}

int cmd_eval_scaling(const std::string& sizes_csv, double avg_degree, int repeats,
                     std::uint64_t seed, EmbedArgs& pipeline_args,
                     const std::string& csv_path) {
  std::vector<int> sizes;
  std::stringstream ss(sizes_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));

  if (pipeline_args.preset.empty()) pipeline_args.preset = "scale";
  ResolvedRun run = resolve_options(pipeline_args);
  rolevec::ScalingResult result =
      rolevec::scaling_run(sizes, avg_degree, run.options, repeats, seed);

  std::vector<std::string> rows{"n,mean_seconds"};
  for (const auto& m : result.measurements) {
    std::printf("n=%-8d mean wall time %.3fs over %d runs\n", m.size, m.mean_seconds, repeats);
    std::ostringstream row;
    row << m.size << "," << m.mean_seconds;
    rows.push_back(row.str());
  }
  std::printf("log-log slope: %.4f\n", result.slope);
  if (!csv_path.empty()) {
    std::ostringstream row;
    row << "slope," << result.slope;
    rows.push_back(row.str());
    write_csv(csv_path, rows);
  }
  return 0;
}

void write_pairs_file(const std::string& path, const rolevec::Graph& g,
                      const std::vector<std::pair<int, int>>& pairs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  for (const auto& [u, v] : pairs) out << g.label(u) << " " << g.label(v) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structural node embeddings via multilayer similarity walks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // ---- embed ----
  EmbedArgs embed_args;
  CLI::App* embed = app.add_subcommand("embed", "learn an embedding from an edge list");
  embed->add_option("graph", embed_args.graph_path, "edge list file");
  embed->add_option("-o,--output", embed_args.output, "embedding output file");
  embed->add_option("--preset", embed_args.preset, "barbell | karate | scale");
  embed->add_option("--from-manifest", embed_args.from_manifest,
                    "re-run the configuration recorded in a manifest");
  embed->add_option("--layers", embed_args.layers, "cap the similarity hierarchy depth");
  embed->add_option("--stay-prob", embed_args.stay_prob, "probability of staying in a layer");
  embed->add_option("--walks", embed_args.walks, "walks per node");
  embed->add_option("--walk-length", embed_args.walk_length, "tokens per walk");
  embed->add_option("--window", embed_args.window, "skip-gram window");
  embed->add_option("--dim", embed_args.dim, "embedding dimensions");
  embed->add_option("--objective", embed_args.objective, "hs | ns");
  embed->add_option("--negative", embed_args.negative, "negative samples per pair");
  embed->add_option("--epochs", embed_args.epochs, "training epochs");
  embed->add_option("--lr", embed_args.learning_rate, "initial learning rate");
  embed->add_option("--seed", embed_args.seed, "master seed");
  embed->add_option("--threads", embed_args.threads, "worker threads (1 = deterministic)");
  embed->add_flag("--opt1,!--no-opt1", embed_args.opt1, "compress degree sequences");
  embed->add_flag("--opt2,!--no-opt2", embed_args.opt2, "degree-similar candidate pairs only");
  embed->add_option("--opt3", embed_args.opt3, "cap layers (default 6 when enabled)")
      ->expected(0, 1)
      ->default_str("")
      ->check(CLI::NonNegativeNumber)
      ->type_name("INT");
  embed->add_flag("--no-opt3", embed_args.no_opt3, "disable the layer cap");
  embed->add_flag("--baseline-plain", embed_args.baseline_plain,
                  "uniform walks on the input graph instead of the multilayer graph");
  embed->add_flag("--no-dynamic-window", embed_args.no_dynamic_window,
                  "use the full window for every pair");
  embed->add_option("--save-distances", embed_args.save_distances,
                    "dump the structural distance table");
  embed->add_option("--save-corpus", embed_args.save_corpus, "dump the walk corpus");

  // ---- generate ----
  CLI::App* generate = app.add_subcommand("generate", "write benchmark graphs");
  generate->require_subcommand(1);

  int barbell_h = 10, barbell_k = 10;
  std::string gen_output = "graph.edges", gen_sidecar;
  CLI::App* gen_barbell_cmd = generate->add_subcommand("barbell", "two cliques joined by a path");
  gen_barbell_cmd->add_option("--h", barbell_h, "clique size (>= 3)");
  gen_barbell_cmd->add_option("--k", barbell_k, "path length (>= 1)");
  gen_barbell_cmd->add_option("-o,--output", gen_output);
  gen_barbell_cmd->add_option("--classes", gen_sidecar, "ground-truth class sidecar");

  std::string mirror_input, mirror_bridge;
  CLI::App* gen_mirror_cmd = generate->add_subcommand("mirror", "disjoint doubled graph");
  gen_mirror_cmd->add_option("--input", mirror_input)->required();
  gen_mirror_cmd->add_option("--bridge", mirror_bridge, "connect this node to its mirror");
  gen_mirror_cmd->add_option("-o,--output", gen_output);
  gen_mirror_cmd->add_option("--pairs", gen_sidecar, "mirror-pair sidecar");

  int er_n = 1000;
  double er_avg_degree = 10.0;
  std::uint64_t gen_seed = 1;
  CLI::App* gen_er_cmd = generate->add_subcommand("er", "Erdos-Renyi random graph");
  gen_er_cmd->add_option("--n", er_n)->required();
  gen_er_cmd->add_option("--avg-degree", er_avg_degree);
  gen_er_cmd->add_option("--seed", gen_seed);
  gen_er_cmd->add_option("-o,--output", gen_output);

  std::string sample_input;
  double sample_s = 0.5;
  bool sample_single = false;
  CLI::App* gen_sample_cmd =
      generate->add_subcommand("edgesample", "independent edge-sampled copies");
  gen_sample_cmd->add_option("--input", sample_input)->required();
  gen_sample_cmd->add_option("--s", sample_s, "keep probability per edge");
  gen_sample_cmd->add_option("--seed", gen_seed);
  gen_sample_cmd->add_flag("--single", sample_single,
                           "emit one sampled copy instead of the union of two");
  gen_sample_cmd->add_option("-o,--output", gen_output);
  gen_sample_cmd->add_option("--pairs", gen_sidecar, "corresponding-pair sidecar");

  // ---- eval ----
  CLI::App* eval = app.add_subcommand("eval", "evaluate embeddings and runtimes");
  eval->require_subcommand(1);

  std::string eval_embedding, eval_pairs_file, eval_csv;
  CLI::App* eval_pairs_cmd = eval->add_subcommand("pairs", "special-vs-all distance report");
  eval_pairs_cmd->add_option("--embedding", eval_embedding)->required();
  eval_pairs_cmd->add_option("--pairs", eval_pairs_file)->required();
  eval_pairs_cmd->add_option("--csv", eval_csv);

  std::string eval_distances, eval_layers = "0,2,4,6";
  CLI::App* eval_corr_cmd =
      eval->add_subcommand("correlation", "structural vs latent distance correlation");
  eval_corr_cmd->add_option("--embedding", eval_embedding)->required();
  eval_corr_cmd->add_option("--distances", eval_distances, "table from embed --save-distances")
      ->required();
  eval_corr_cmd->add_option("--layers", eval_layers, "comma-separated layer list");
  eval_corr_cmd->add_option("--csv", eval_csv);

  std::string eval_labels, eval_activity, eval_graph;
  bool eval_degree = false;
  double eval_train_fraction = 0.8;
  int eval_repeats = 10;
  std::uint64_t eval_seed = 1;
  CLI::App* eval_classify_cmd =
      eval->add_subcommand("classify", "one-vs-rest logistic regression accuracy");
  eval_classify_cmd->add_option("--embedding", eval_embedding);
  eval_classify_cmd->add_option("--labels", eval_labels, "lines: external_id label");
  eval_classify_cmd->add_option("--activity", eval_activity,
                                "lines: external_id score (quartile labels)");
  eval_classify_cmd->add_flag("--degree", eval_degree, "degree-only baseline features");
  eval_classify_cmd->add_option("--graph", eval_graph, "edge list for --degree");
  eval_classify_cmd->add_option("--train-fraction", eval_train_fraction);
  eval_classify_cmd->add_option("--repeats", eval_repeats);
  eval_classify_cmd->add_option("--seed", eval_seed);
  eval_classify_cmd->add_option("--csv", eval_csv);

  std::string scaling_sizes = "1000,4000,16000";
  double scaling_avg_degree = 10.0;
  int scaling_repeats = 1;
  EmbedArgs scaling_args;
  CLI::App* eval_scaling_cmd = eval->add_subcommand("scaling", "wall-time growth exponent");
  eval_scaling_cmd->add_option("--sizes", scaling_sizes, "comma-separated node counts");
  eval_scaling_cmd->add_option("--avg-degree", scaling_avg_degree);
  eval_scaling_cmd->add_option("--repeats", scaling_repeats);
  eval_scaling_cmd->add_option("--seed", eval_seed);
  eval_scaling_cmd->add_option("--preset", scaling_args.preset, "pipeline preset (default scale)");
  eval_scaling_cmd->add_option("--csv", eval_csv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*embed) return cmd_embed(embed_args);

    if (*gen_barbell_cmd) {
      rolevec::BarbellGraph b = rolevec::gen_barbell(barbell_h, barbell_k);
      rolevec::save_edge_list(b.graph, gen_output);
      if (!gen_sidecar.empty()) {
        std::ofstream out(gen_sidecar);
        for (int v = 0; v < b.graph.node_count(); ++v)
          out << b.graph.label(v) << " " << b.class_of[v] << "\n";
      }
      std::cerr << "wrote " << gen_output << " (" << b.graph.node_count() << " nodes, "
                << b.graph.edge_count() << " edges)\n";
      return 0;
    }
    if (*gen_mirror_cmd) {
      rolevec::Graph g = rolevec::load_edge_list(mirror_input);
      rolevec::MirroredGraph m = rolevec::gen_mirrored(g, mirror_bridge);
      rolevec::save_edge_list(m.graph, gen_output);
      if (!gen_sidecar.empty()) write_pairs_file(gen_sidecar, m.graph, m.mirror_pairs);
      std::cerr << "wrote " << gen_output << " (" << m.graph.node_count() << " nodes, "
                << m.graph.edge_count() << " edges)\n";
      return 0;
    }
    if (*gen_er_cmd) {
      rolevec::Rng rng(gen_seed);
      rolevec::LoadReport report;
      rolevec::Graph g = rolevec::gen_er(er_n, er_avg_degree, rng, &report);
      rolevec::save_edge_list(g, gen_output);
      std::cerr << "wrote " << gen_output << " (" << g.node_count() << " nodes, "
                << g.edge_count() << " edges";
      if (report.isolated_dropped) std::cerr << ", " << report.isolated_dropped << " isolated dropped";
      std::cerr << ")\n";
      return 0;
    }
    if (*gen_sample_cmd) {
      rolevec::Graph g = rolevec::load_edge_list(sample_input);
      rolevec::Rng rng(gen_seed);
      if (sample_single) {
        rolevec::LoadReport report;
        rolevec::Graph sampled = rolevec::edge_sample(g, sample_s, rng, &report);
        rolevec::save_edge_list(sampled, gen_output);
        std::cerr << "wrote " << gen_output << " (" << sampled.node_count() << " nodes, "
                  << sampled.edge_count() << " edges)\n";
      } else {
        rolevec::SampledPairGraph pair = rolevec::gen_edge_sampled_pair(g, sample_s, rng);
        rolevec::save_edge_list(pair.graph, gen_output);
        if (!gen_sidecar.empty()) write_pairs_file(gen_sidecar, pair.graph, pair.corresponding);
        std::cerr << "wrote " << gen_output << " (" << pair.graph.node_count() << " nodes, "
                  << pair.corresponding.size() << " corresponding pairs)\n";
      }
      return 0;
    }

    if (*eval_pairs_cmd) return cmd_eval_pairs(eval_embedding, eval_pairs_file, eval_csv);
    if (*eval_corr_cmd)
      return cmd_eval_correlation(eval_embedding, eval_distances, eval_layers, eval_csv);
    if (*eval_classify_cmd) {
      if (eval_labels.empty() && eval_activity.empty())
        throw CLI::ValidationError("classify", "need --labels or --activity");
      if (!eval_degree && eval_embedding.empty())
        throw CLI::ValidationError("classify", "need --embedding (or --degree --graph)");
      return cmd_eval_classify(eval_embedding, eval_labels, eval_activity, eval_graph,
                               eval_degree, eval_train_fraction, eval_repeats, eval_seed,
                               eval_csv);
    }
    if (*eval_scaling_cmd)
      return cmd_eval_scaling(scaling_sizes, scaling_avg_degree, scaling_repeats, eval_seed,
                              scaling_args, eval_csv);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
