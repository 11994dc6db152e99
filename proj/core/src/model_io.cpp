#include "nrt/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "nrt/errors.hpp"

namespace nrt {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_node(std::ostream& out, const TreeNode& node) {
  if (node.leaf) {
    out << "node " << node.id << " leaf " << fmt(node.low) << ' ' << fmt(node.high)
        << ' ' << node.count << " rep " << fmt(node.representative) << '\n';
    return;
  }
  out << "node " << node.id << " internal " << fmt(node.low) << ' ' << fmt(node.high)
      << ' ' << node.count << " threshold " << fmt(node.threshold) << " left "
      << node.left->id << " right " << node.right->id << " layers "
      << node.classifier.layers.size() << '\n';
  for (std::size_t l = 0; l < node.classifier.layers.size(); ++l) {
    const Layer& layer = node.classifier.layers[l];
    out << "layer " << l << ' ' << layer.weight.rows << ' ' << layer.weight.cols << '\n';
    out << 'w';
    for (double v : layer.weight.data) out << ' ' << fmt(v);
    out << '\n';
    out << 'b';
    for (double v : layer.bias) out << ' ' << fmt(v);
    out << '\n';
  }
  write_node(out, *node.left);
  write_node(out, *node.right);
}

struct FlatNode {
  TreeNode node;
  int left_id = -1;
  int right_id = -1;
};

[[noreturn]] void bad_model(const std::string& detail) {
  throw DataError("model file: " + detail);
}

double parse_real(std::istream& in, const std::string& what) {
  std::string token;
  if (!(in >> token)) bad_model("missing " + what);
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) bad_model("bad " + what + ": '" + token + "'");
    return v;
  } catch (const std::logic_error&) {
    bad_model("bad " + what + ": '" + token + "'");
  }
}

long long parse_int(std::istream& in, const std::string& what) {
  long long v = 0;
  if (!(in >> v)) bad_model("missing " + what);
  return v;
}

}  // namespace

std::string model_to_string(const NrtModel& model,
                            const std::vector<std::string>& feature_names,
                            const std::string& response_name) {
  if (!model.root) throw std::invalid_argument("model_to_string: empty model");
  if (feature_names.size() != model.dim) {
    throw std::invalid_argument("model_to_string: feature name count != dim");
  }
  std::ostringstream out;
  out << "nrt-model " << kModelSchemaVersion << '\n';
  out << "response " << response_name << '\n';
  for (const std::string& name : feature_names) out << "feature " << name << '\n';

  const TrainConfig& c = model.config;
  out << "config lambda " << fmt(c.lambda) << '\n';
  out << "config beta " << fmt(c.beta) << '\n';
  out << "config method " << to_string(c.method) << '\n';
  out << "config penalty " << to_string(c.penalty) << '\n';
  out << "config classifier " << to_string(c.classifier_kind) << '\n';
  out << "config layers " << c.layer_sizes.size();
  for (std::size_t h : c.layer_sizes) out << ' ' << h;
  out << '\n';
  out << "config learning_rate " << fmt(c.learning_rate) << '\n';
  out << "config epochs_per_node " << c.epochs_per_node << '\n';
  out << "config coord_descent_rounds " << c.coord_descent_rounds << '\n';
  out << "config threshold_lr " << fmt(c.threshold_lr) << '\n';
  out << "config max_depth " << c.max_depth << '\n';
  out << "config min_node_size " << c.min_node_size << '\n';
  out << "config purity_epsilon " << fmt(c.purity_epsilon) << '\n';
  out << "config dev_saturation_tol " << fmt(c.dev_saturation_tol) << '\n';
  out << "config seed " << c.seed << '\n';
  out << "config num_seeds " << c.num_seeds << '\n';
  out << "config scan_candidate_cap " << c.scan_candidate_cap << '\n';
  out << "config batch_size " << c.batch_size << '\n';
  out << "config leaf_value " << to_string(c.leaf_value) << '\n';

  out << "tree dim " << model.dim << " depth " << model.depth << " leaves "
      << model.leaf_count << '\n';
  write_node(out, *model.root);
  out << "end\n";
  return out.str();
}

LoadedModel model_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;

  if (!std::getline(in, line)) bad_model("empty");
  {
    std::istringstream head(line);
    std::string magic;
    long long version = 0;
    head >> magic >> version;
    if (magic != "nrt-model") bad_model("bad magic '" + magic + "'");
    if (version != kModelSchemaVersion) {
      bad_model("unsupported schema version " + std::to_string(version));
    }
  }

  LoadedModel loaded;
  TrainConfig& cfg = loaded.model.config;
  std::map<int, FlatNode> nodes;
  bool saw_end = false;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "end") {
      saw_end = true;
      break;
    } else if (key == "response") {
      std::string rest;
      std::getline(ls, rest);
      loaded.response_name = rest.empty() ? "" : rest.substr(1);
    } else if (key == "feature") {
      std::string rest;
      std::getline(ls, rest);
      if (rest.empty()) bad_model("feature line without a name");
      loaded.feature_names.push_back(rest.substr(1));
    } else if (key == "config") {
      std::string field;
      ls >> field;
      if (field == "lambda") cfg.lambda = parse_real(ls, "lambda");
      else if (field == "beta") cfg.beta = parse_real(ls, "beta");
      else if (field == "method") {
        std::string v;
        ls >> v;
        cfg.method = split_method_from_string(v);
      } else if (field == "penalty") {
        std::string v;
        ls >> v;
        cfg.penalty = penalty_from_string(v);
      } else if (field == "classifier") {
        std::string v;
        ls >> v;
        cfg.classifier_kind = classifier_kind_from_string(v);
      } else if (field == "layers") {
        const long long count = parse_int(ls, "layer count");
        cfg.layer_sizes.clear();
        for (long long i = 0; i < count; ++i) {
          cfg.layer_sizes.push_back(static_cast<std::size_t>(parse_int(ls, "layer size")));
        }
      } else if (field == "learning_rate") cfg.learning_rate = parse_real(ls, "learning_rate");
      else if (field == "epochs_per_node") cfg.epochs_per_node = static_cast<std::size_t>(parse_int(ls, "epochs_per_node"));
      else if (field == "coord_descent_rounds") cfg.coord_descent_rounds = static_cast<std::size_t>(parse_int(ls, "coord_descent_rounds"));
      else if (field == "threshold_lr") cfg.threshold_lr = parse_real(ls, "threshold_lr");
      else if (field == "max_depth") cfg.max_depth = static_cast<std::size_t>(parse_int(ls, "max_depth"));
      else if (field == "min_node_size") cfg.min_node_size = static_cast<std::size_t>(parse_int(ls, "min_node_size"));
      else if (field == "purity_epsilon") cfg.purity_epsilon = parse_real(ls, "purity_epsilon");
      else if (field == "dev_saturation_tol") cfg.dev_saturation_tol = parse_real(ls, "dev_saturation_tol");
      else if (field == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(ls, "seed"));
      else if (field == "num_seeds") cfg.num_seeds = static_cast<std::size_t>(parse_int(ls, "num_seeds"));
      else if (field == "scan_candidate_cap") cfg.scan_candidate_cap = static_cast<std::size_t>(parse_int(ls, "scan_candidate_cap"));
      else if (field == "batch_size") cfg.batch_size = static_cast<std::size_t>(parse_int(ls, "batch_size"));
      else if (field == "leaf_value") {
        std::string v;
        ls >> v;
        cfg.leaf_value = leaf_value_from_string(v);
      } else bad_model("unknown config field '" + field + "'");
    } else if (key == "tree") {
      std::string token;
      while (ls >> token) {
        if (token == "dim") loaded.model.dim = static_cast<std::size_t>(parse_int(ls, "dim"));
        else if (token == "depth") parse_int(ls, "depth");
        else if (token == "leaves") parse_int(ls, "leaves");
        else bad_model("unknown tree field '" + token + "'");
      }
    } else if (key == "node") {
      const int id = static_cast<int>(parse_int(ls, "node id"));
      std::string kind;
      ls >> kind;
      FlatNode flat;
      flat.node.id = id;
      flat.node.low = parse_real(ls, "low");
      flat.node.high = parse_real(ls, "high");
      flat.node.count = static_cast<std::size_t>(parse_int(ls, "count"));
      if (kind == "leaf") {
        std::string rep_key;
        ls >> rep_key;
        if (rep_key != "rep") bad_model("leaf node " + std::to_string(id) + " missing rep");
        flat.node.representative = parse_real(ls, "representative");
      } else if (kind == "internal") {
        std::string token;
        ls >> token;
        if (token != "threshold") bad_model("internal node missing threshold");
        flat.node.leaf = false;
        flat.node.threshold = parse_real(ls, "threshold");
        ls >> token;
        if (token != "left") bad_model("internal node missing left id");
        flat.left_id = static_cast<int>(parse_int(ls, "left id"));
        ls >> token;
        if (token != "right") bad_model("internal node missing right id");
        flat.right_id = static_cast<int>(parse_int(ls, "right id"));
        ls >> token;
        if (token != "layers") bad_model("internal node missing layer count");
        const long long layer_count = parse_int(ls, "layer count");

        for (long long l = 0; l < layer_count; ++l) {
          std::string layer_line;
          if (!std::getline(in, layer_line)) bad_model("truncated layer header");
          std::istringstream lh(layer_line);
          std::string layer_key;
          lh >> layer_key;
          if (layer_key != "layer") bad_model("expected layer header");
          parse_int(lh, "layer index");
          const auto rows = static_cast<std::size_t>(parse_int(lh, "rows"));
          const auto cols = static_cast<std::size_t>(parse_int(lh, "cols"));

          Layer layer;
          layer.weight = Matrix(rows, cols);
          layer.bias.assign(rows, 0.0);

          std::string wline;
          if (!std::getline(in, wline)) bad_model("truncated weights");
          std::istringstream ws(wline);
          std::string tag;
          ws >> tag;
          if (tag != "w") bad_model("expected weight line");
          for (double& v : layer.weight.data) v = parse_real(ws, "weight");

          std::string bline;
          if (!std::getline(in, bline)) bad_model("truncated biases");
          std::istringstream bs(bline);
          bs >> tag;
          if (tag != "b") bad_model("expected bias line");
          for (double& v : layer.bias) v = parse_real(bs, "bias");

          flat.node.classifier.layers.push_back(std::move(layer));
        }
      } else {
        bad_model("unknown node kind '" + kind + "'");
      }
      if (!nodes.emplace(id, std::move(flat)).second) {
        bad_model("duplicate node id " + std::to_string(id));
      }
    } else {
      bad_model("unknown line '" + key + "'");
    }
  }
  if (!saw_end) bad_model("missing end marker");
  if (nodes.empty()) bad_model("no nodes");
  if (nodes.find(0) == nodes.end()) bad_model("missing root node 0");

  // Link children; every non-root node must be referenced exactly once.
  std::map<int, int> referenced;
  for (auto& [id, flat] : nodes) {
    if (flat.node.leaf) continue;
    for (int child : {flat.left_id, flat.right_id}) {
      if (nodes.find(child) == nodes.end()) {
        bad_model("node " + std::to_string(id) + " references missing node " +
                  std::to_string(child));
      }
      referenced[child] += 1;
    }
  }
  for (const auto& [id, flat] : nodes) {
    (void)flat;
    const int expected = id == 0 ? 0 : 1;
    if (referenced[id] != expected) {
      bad_model("node " + std::to_string(id) + " referenced " +
                std::to_string(referenced[id]) + " times");
    }
  }

  std::function<std::unique_ptr<TreeNode>(int)> build = [&](int id) {
    FlatNode& flat = nodes.at(id);
    auto node = std::make_unique<TreeNode>(std::move(flat.node));
    if (!node->leaf) {
      node->left = build(flat.left_id);
      node->right = build(flat.right_id);
    }
    return node;
  };
  loaded.model.root = build(0);
  loaded.model.depth = tree_depth(*loaded.model.root);
  loaded.model.leaf_count = count_leaves(*loaded.model.root);

  if (loaded.feature_names.size() != loaded.model.dim) {
    bad_model("feature name count does not match dim");
  }
  return loaded;
}

void save_model(const std::string& path, const NrtModel& model,
                const std::vector<std::string>& feature_names,
                const std::string& response_name) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << model_to_string(model, feature_names, response_name);
  if (!out) throw DataError("write failed for '" + path + "'");
}

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_string(buffer.str());
}

}  // namespace nrt
