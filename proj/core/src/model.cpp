#include <algorithm>

#include "erpclass/classifiers.hpp"
#include "erpclass/error.hpp"
#include "json_util.hpp"

namespace erpclass {

using nlohmann::ordered_json;

namespace {

constexpr int kModelFormatVersion = 1;

Label label_from_json(const ordered_json& j) {
  auto l = parse_label(j.get<std::string>());
  if (!l) throw Error(ErrorCode::kInvalidModel, "bad label " + j.dump());
  return *l;
}

std::vector<Label> labels_from_json(const ordered_json& j) {
  std::vector<Label> out;
  for (const auto& v : j) out.push_back(label_from_json(v));
  return out;
}

ordered_json labels_to_json(const std::vector<Label>& labels) {
  ordered_json arr = ordered_json::array();
  for (Label l : labels) arr.push_back(std::string(to_string(l)));
  return arr;
}

}  // namespace

namespace detail {

ordered_json config_to_json(const ModelConfig& cfg) {
  ordered_json j;
  j["model"] = model_name(cfg);
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TreeConfig>) {
          j["max_depth"] = c.max_depth ? ordered_json(*c.max_depth) : ordered_json("unlimited");
          j["min_samples_split"] = c.min_samples_split;
        } else if constexpr (std::is_same_v<T, KnnConfig>) {
          j["k"] = c.k ? ordered_json(*c.k) : ordered_json("auto");
          j["distance"] = "euclidean";
        } else {
          j["C"] = c.C;
          j["gamma"] = c.gamma ? ordered_json(*c.gamma) : ordered_json("scale");
          j["tolerance"] = c.tolerance;
          j["max_passes"] = c.max_passes;
          j["seed"] = c.seed;
        }
      },
      cfg);
  return j;
}

ModelConfig config_from_json(const ordered_json& j) {
  const std::string name = j.at("model").get<std::string>();
  if (name == "dt") {
    TreeConfig c;
    if (!j.at("max_depth").is_string()) c.max_depth = j.at("max_depth").get<std::size_t>();
    c.min_samples_split = j.at("min_samples_split").get<std::size_t>();
    return c;
  }
  if (name == "knn") {
    KnnConfig c;
    if (!j.at("k").is_string()) c.k = j.at("k").get<std::size_t>();
    return c;
  }
  if (name == "svm") {
    SvmConfig c;
    c.C = j.at("C").get<double>();
    if (!j.at("gamma").is_string()) c.gamma = j.at("gamma").get<double>();
    c.tolerance = j.at("tolerance").get<double>();
    c.max_passes = j.at("max_passes").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  }
  throw Error(ErrorCode::kInvalidModel, "unknown model '" + name + "'");
}

ordered_json spec_to_json(const ModelSpec& spec) {
  ordered_json j = config_to_json(spec.config);
  j["standardize"] = spec.standardize && !std::holds_alternative<TreeConfig>(spec.config);
  return j;
}

}  // namespace detail

TrainedModel fit_model(const FeatureMatrix& train, const ModelSpec& spec) {
  validate(spec.config);
  if (const auto* tree = std::get_if<TreeConfig>(&spec.config)) return fit_tree(train, *tree);
  if (train.rows() == 0) throw Error(ErrorCode::kEmptyTrainingSet, "no training rows");

  std::optional<StandardizerState> standardizer;
  const FeatureMatrix* input = &train;
  FeatureMatrix scaled;
  if (spec.standardize) {
    standardizer = fit_standardizer(train);
    scaled = apply_standardizer(*standardizer, train);
    input = &scaled;
  }
  TrainedModel model = std::holds_alternative<KnnConfig>(spec.config)
                           ? fit_knn(*input, std::get<KnnConfig>(spec.config))
                           : fit_svm(*input, std::get<SvmConfig>(spec.config));
  model.standardizer = std::move(standardizer);
  return model;
}

std::vector<Label> predict(const TrainedModel& model, const FeatureMatrix& rows) {
  if (rows.schema().names() != model.feature_names) {
    throw Error(ErrorCode::kSchemaMismatch, "prediction columns differ from training columns");
  }
  std::vector<Label> out;
  out.reserve(rows.rows());
  std::vector<double> x(rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    auto src = rows.row(r);
    std::copy(src.begin(), src.end(), x.begin());
    if (model.standardizer) apply_standardizer_inplace(*model.standardizer, x);
    out.push_back(std::visit([&](const auto& m) { return m.predict_row(x); }, model.model));
  }
  return out;
}

std::string model_to_json(const TrainedModel& model) {
  ordered_json j;
  j["format"] = "erpclass-model";
  j["version"] = kModelFormatVersion;
  j["features"] = model.feature_names;
  if (model.standardizer) {
    j["standardizer"] = {{"means", model.standardizer->means},
                         {"stddevs", model.standardizer->stddevs}};
  } else {
    j["standardizer"] = nullptr;
  }
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        j["config"] = detail::config_to_json(m.config);
        ordered_json p;
        if constexpr (std::is_same_v<T, TreeModel>) {
          j["variant"] = "tree";
          p["nodes"] = ordered_json::array();
          for (const auto& n : m.nodes) {
            p["nodes"].push_back({{"feature", n.feature},
                                  {"threshold", n.threshold},
                                  {"left", n.left},
                                  {"right", n.right},
                                  {"label", to_string(n.label)},
                                  {"purity", n.purity},
                                  {"samples", n.samples}});
          }
        } else if constexpr (std::is_same_v<T, KnnModel>) {
          j["variant"] = "knn";
          p["k"] = m.k;
          p["n_features"] = m.n_features;
          p["train"] = m.train;
          p["labels"] = labels_to_json(m.labels);
        } else {
          j["variant"] = "svm";
          p["gamma"] = m.gamma;
          p["n_features"] = m.n_features;
          p["support_vectors"] = m.support_vectors;
          p["dual_coef"] = m.dual_coef;
          p["bias"] = m.bias;
          p["converged"] = m.converged;
          p["iterations"] = m.iterations;
        }
        j["params"] = std::move(p);
      },
      model.model);
  return j.dump(2) + "\n";
}

TrainedModel model_from_json(const std::string& text) {
  try {
    const auto j = ordered_json::parse(text);
    if (j.at("format") != "erpclass-model") throw Error(ErrorCode::kInvalidModel, "not a model file");
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorCode::kInvalidModel, "unsupported version " + j.at("version").dump());
    }
    TrainedModel model;
    model.feature_names = j.at("features").get<std::vector<std::string>>();
    if (!j.at("standardizer").is_null()) {
      StandardizerState s;
      s.columns = model.feature_names;
      s.means = j.at("standardizer").at("means").get<std::vector<double>>();
      s.stddevs = j.at("standardizer").at("stddevs").get<std::vector<double>>();
      model.standardizer = std::move(s);
    }
    const auto cfg = detail::config_from_json(j.at("config"));
    const auto& p = j.at("params");
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "tree") {
      TreeModel t;
      t.config = std::get<TreeConfig>(cfg);
      for (const auto& n : p.at("nodes")) {
        TreeNode node;
        node.feature = n.at("feature").get<int>();
        node.threshold = n.at("threshold").get<double>();
        node.left = n.at("left").get<int>();
        node.right = n.at("right").get<int>();
        node.label = label_from_json(n.at("label"));
        node.purity = n.at("purity").get<double>();
        node.samples = n.at("samples").get<std::size_t>();
        t.nodes.push_back(node);
      }
      if (t.nodes.empty()) throw Error(ErrorCode::kInvalidModel, "tree has no nodes");
      model.model = std::move(t);
    } else if (variant == "knn") {
      KnnModel k;
      k.config = std::get<KnnConfig>(cfg);
      k.k = p.at("k").get<std::size_t>();
      k.n_features = p.at("n_features").get<std::size_t>();
      k.train = p.at("train").get<std::vector<double>>();
      k.labels = labels_from_json(p.at("labels"));
      model.model = std::move(k);
    } else if (variant == "svm") {
      SvmModel s;
      s.config = std::get<SvmConfig>(cfg);
      s.gamma = p.at("gamma").get<double>();
      s.n_features = p.at("n_features").get<std::size_t>();
      s.support_vectors = p.at("support_vectors").get<std::vector<double>>();
      s.dual_coef = p.at("dual_coef").get<std::vector<double>>();
      s.bias = p.at("bias").get<double>();
      s.converged = p.at("converged").get<bool>();
      s.iterations = p.at("iterations").get<std::size_t>();
      model.model = std::move(s);
    } else {
      throw Error(ErrorCode::kInvalidModel, "unknown variant '" + variant + "'");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidModel, e.what());
  } catch (const std::bad_variant_access&) {
    throw Error(ErrorCode::kInvalidModel, "config does not match variant");
  }
}

}  // namespace erpclass
