// Copyright 2026 The kcalpose Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "kcalpose/cli.hpp"
#include "kcalpose/error.hpp"
#include "kcalpose/io.hpp"
#include "kcalpose/pose.hpp"
#include "kcalpose/predictor.hpp"
#include "kcalpose/rng.hpp"

namespace kcalpose::cli {

namespace {

namespace fs = std::filesystem;

void require_file(const std::optional<fs::path>& path, const char* flag) {
  if (!path) return;
  std::error_code ec;
  if (!fs::is_regular_file(*path, ec)) {
    throw Error(ErrorKind::kIo, std::string(flag) + " " + path->string() + " is not a readable file");
  }
}

const fs::path& need(const std::optional<fs::path>& path, const char* flag) {
  if (!path) throw Error(ErrorKind::kInvalidParameter, std::string(flag) + " is required");
  return *path;
}

void need_out(const RunConfig& cfg) {
  if (cfg.out.empty()) throw Error(ErrorKind::kInvalidParameter, "--out is required");
}

std::set<std::string> parse_name_list(const std::string& csv) {
  std::set<std::string> names;
  for (auto& name : io::split_fields(csv)) {
    if (!name.empty()) names.insert(std::move(name));
  }
  return names;
}

BodyModel resolve_body_model(const RunConfig& cfg, const std::vector<SkeletonSequence>& seqs) {
  if (cfg.body_model) return load_body_model(*cfg.body_model);
  if (seqs.empty()) throw Error(ErrorKind::kEmptyInput, "no skeleton records");
  return default_body_model_for(seqs.front().joint_count());
}

std::vector<EnergyEstimate> estimate_all(const RunConfig& cfg, const std::vector<SkeletonSequence>& seqs,
                                         const BodyModel& model) {
  std::vector<EnergyEstimate> out;
  out.reserve(seqs.size());
  for (const auto& s : seqs) out.push_back(sequence_hourly_kcal(s, model, cfg.conversion));
  return out;
}

// ---------------------------------------------------------------------------

int cmd_synth(const RunConfig& cfg, const SynthCorpusParams& params, std::ostream& out) {
  need_out(cfg);
  const auto text = synth_corpus(params);
  io::atomic_write(cfg.out, text);
  out << "wrote " << params.activities * params.samples_per_activity << " sequences to " << cfg.out.string()
      << "\n";
  return kExitOk;
}

int cmd_energy(const RunConfig& cfg, std::ostream& out) {
  need_out(cfg);
  const auto seqs = parse_skeleton_file(need(cfg.skeletons, "--skeletons"));
  const auto model = resolve_body_model(cfg, seqs);
  const auto estimates = estimate_all(cfg, seqs, model);
  io::atomic_write(cfg.out, format_energy_report(estimates));
  out << "wrote " << estimates.size() << " energy rows to " << cfg.out.string() << "\n";
  return kExitOk;
}

int cmd_annotate(const RunConfig& cfg, std::ostream& out) {
  need_out(cfg);
  const auto seqs = parse_skeleton_file(need(cfg.skeletons, "--skeletons"));
  if (seqs.empty()) throw Error(ErrorKind::kEmptyInput, "no skeleton records");
  const auto model = resolve_body_model(cfg, seqs);
  const auto estimates = estimate_all(cfg, seqs, model);

  CompendiumTable compendium;
  if (cfg.compendium) compendium = load_compendium(*cfg.compendium);
  std::map<std::string, double> hr_hourly;
  if (cfg.hr_study) hr_hourly = hourly_kcal_by_activity(load_heart_rate_study(*cfg.hr_study, cfg.hr_weight_unit));

  // Activities in order of first appearance; sample indices per activity.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    auto& list = members[estimates[i].activity];
    if (list.empty()) order.push_back(estimates[i].activity);
    list.push_back(i);
  }

  std::vector<SampleAnnotation> annotations(estimates.size());
  for (const auto& activity : order) {
    const auto& idx = members[activity];
    std::vector<SampleEnergy> energies;
    double skeleton_total = 0.0;
    for (const auto i : idx) {
      energies.push_back({estimates[i].sample_id, estimates[i].hourly_kcal});
      skeleton_total += estimates[i].hourly_kcal;
    }
    SourceEstimates sources;
    sources.compendium = compendium.lookup(activity);
    if (const auto it = hr_hourly.find(activity); it != hr_hourly.end()) sources.heart_rate = it->second;
    // Heart-rate flows average all three estimates; compendium-only flows
    // keep the skeleton term for the sample-level correction unless nothing
    // else is known about the activity.
    const bool no_other_source = !sources.compendium && !sources.heart_rate;
    if (cfg.hr_study || no_other_source) skeleton_total /= static_cast<double>(idx.size()), sources.skeleton_mean = skeleton_total;

    const auto category = category_annotation(activity, sources);
    const auto samples = sample_annotations(category, energies, cfg.annotation);
    double lo = samples.front().kcal_per_hour;
    double hi = lo;
    double total = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      annotations[idx[k]] = samples[k];
      lo = std::min(lo, samples[k].kcal_per_hour);
      hi = std::max(hi, samples[k].kcal_per_hour);
      total += samples[k].kcal_per_hour;
    }
    out << "category " << activity << " l_cat=" << io::format_fixed(category.kcal_per_hour, 1)
        << " sources=" << format_source_mask(category.sources) << " n=" << samples.size()
        << " min=" << io::format_fixed(lo, 1) << " mean=" << io::format_fixed(total / samples.size(), 1)
        << " max=" << io::format_fixed(hi, 1) << "\n";
  }
  io::atomic_write(cfg.out, format_annotations(annotations));
  out << "wrote " << annotations.size() << " annotations to " << cfg.out.string() << "\n";
  return kExitOk;
}

int cmd_split(const RunConfig& cfg, std::ostream& out) {
  need_out(cfg);
  const auto annotations = load_annotations(need(cfg.annotations, "--annotations"));
  std::vector<SampleRef> samples;
  samples.reserve(annotations.size());
  for (const auto& a : annotations) samples.push_back({a.sample_id, a.activity});
  const auto manifest = build_splits(samples, cfg.heldout, cfg.seed, cfg.ratio);
  io::atomic_write(cfg.out, format_manifest(manifest));
  out << "train=" << manifest.train.size() << " test_known=" << manifest.test_known.size()
      << " test_new=" << manifest.test_new.size() << "\n";
  return kExitOk;
}

int cmd_predict(const RunConfig& cfg, const std::optional<WindowSpec>& window, std::ostream& out) {
  need_out(cfg);
  const auto seqs = parse_skeleton_file(need(cfg.skeletons, "--skeletons"));
  const SkeletonForwardPredictor predictor(resolve_body_model(cfg, seqs), cfg.conversion);
  std::vector<ScalarPrediction> preds;
  preds.reserve(seqs.size());
  for (const auto& s : seqs) {
    preds.push_back({s.sample_id(), window ? predict_windowed(predictor, s, *window) : predictor.predict(s)});
  }
  io::atomic_write(cfg.out, format_predictions(preds));
  out << "wrote " << preds.size() << " predictions to " << cfg.out.string() << "\n";
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  need_out(cfg);
  const auto annotations = load_annotations(need(cfg.annotations, "--annotations"));
  const auto manifest = load_manifest(need(cfg.manifest, "--manifest"));
  if (cfg.predictions.has_value() == cfg.pred_dists.has_value()) {
    throw Error(ErrorKind::kInvalidParameter, "pass exactly one of --predictions or --pred-dists");
  }

  std::map<std::string, const SampleAnnotation*> truth;
  for (const auto& a : annotations) truth[a.sample_id] = &a;

  std::map<std::string, double> scalar;
  std::map<std::string, CalorieDistribution> dists;
  if (cfg.predictions) {
    for (const auto& p : load_predictions(*cfg.predictions)) scalar[p.sample_id] = p.kcal_per_hour;
  } else {
    for (auto& [id, d] : load_distribution_dump(*cfg.pred_dists)) {
      if (d.size() != cfg.codec.n_bins) {
        throw Error(ErrorKind::kShapeMismatch, id + ": " + std::to_string(d.size()) + " bins, --bins is " +
                                                   std::to_string(cfg.codec.n_bins));
      }
      scalar[id] = decode(d, cfg.codec);
      dists.emplace(id, std::move(d));
    }
  }

  struct Member {
    std::string id;
    std::string activity;
    double gt;
  };
  std::map<Split, std::vector<Member>> by_split;
  std::vector<double> train_gts;
  std::vector<std::string> missing;
  for (const auto& e : manifest.entries) {
    const auto it = truth.find(e.sample_id);
    if (it == truth.end()) {
      throw Error(ErrorKind::kInvalidParameter, "manifest sample " + e.sample_id + " has no annotation");
    }
    if (e.split == Split::kTrain) {
      train_gts.push_back(it->second->kcal_per_hour);
      continue;
    }
    if (!scalar.contains(e.sample_id)) missing.push_back(e.sample_id);
    by_split[e.split].push_back({e.sample_id, it->second->activity, it->second->kcal_per_hour});
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ",") + id;
    throw Error(ErrorKind::kMissingPrediction, list);
  }

  std::optional<AveragePredictor> average;
  std::optional<RandomPredictor> random;
  if (cfg.baselines) {
    average.emplace(train_gts);
    random.emplace(cfg.seed, 0.0, cfg.annotation.l_max);
  }

  auto report_for = [&](const std::string& name, const std::vector<const Member*>& group) {
    std::vector<double> preds;
    std::vector<double> gts;
    for (const auto* m : group) {
      preds.push_back(scalar.at(m->id));
      gts.push_back(m->gt);
    }
    auto row = evaluate(name, preds, gts);
    if (!dists.empty()) {
      std::vector<CalorieDistribution> ds;
      for (const auto* m : group) ds.push_back(dists.at(m->id));
      row.nll = nll(ds, gts, cfg.codec);
    }
    return row;
  };

  std::vector<EvalReport> rows;
  for (const Split split : {Split::kTestKnown, Split::kTestNew}) {
    const auto it = by_split.find(split);
    if (it == by_split.end() || it->second.empty()) continue;
    const std::string name(to_string(split));
    std::vector<const Member*> all;
    for (const auto& m : it->second) all.push_back(&m);
    rows.push_back(report_for(name, all));

    if (cfg.baselines) {
      std::vector<double> gts;
      std::vector<double> avg;
      std::vector<double> rnd;
      for (const auto* m : all) {
        gts.push_back(m->gt);
        avg.push_back(average->predict());
        rnd.push_back(random->predict());
      }
      rows.push_back(evaluate(name + ":average", avg, gts));
      rows.push_back(evaluate(name + ":random", rnd, gts));
    }
    if (cfg.per_activity) {
      std::map<std::string, std::vector<const Member*>> groups;
      for (const auto* m : all) groups[m->activity].push_back(m);
      for (const auto& [activity, group] : groups) rows.push_back(report_for(name + "@" + activity, group));
    }
  }
  const auto text = format_report(rows);
  io::atomic_write(cfg.out, text);
  out << text;
  return kExitOk;
}

int cmd_softlabel(const RunConfig& cfg, std::ostream& out) {
  need_out(cfg);
  cfg.codec.validate();
  const auto annotations = load_annotations(need(cfg.annotations, "--annotations"));
  std::vector<std::pair<std::string, CalorieDistribution>> dists;
  for (const auto& a : annotations) dists.emplace_back(a.sample_id, encode(a.kcal_per_hour, cfg.codec));
  io::atomic_write(cfg.out, format_distribution_dump(dists));
  out << "wrote " << dists.size() << " soft labels to " << cfg.out.string() << "\n";
  return kExitOk;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const auto annotations = load_annotations(need(cfg.annotations, "--annotations"));
  struct Acc {
    std::size_t n = 0;
    double lo = 0.0;
    double hi = 0.0;
    double total = 0.0;
    void add(double v) {
      lo = n == 0 ? v : std::min(lo, v);
      hi = n == 0 ? v : std::max(hi, v);
      total += v;
      ++n;
    }
  };
  Acc all;
  std::vector<std::string> order;
  std::map<std::string, Acc> per;
  for (const auto& a : annotations) {
    all.add(a.kcal_per_hour);
    if (!per.contains(a.activity)) order.push_back(a.activity);
    per[a.activity].add(a.kcal_per_hour);
  }
  auto line = [&](const std::string& scope, const Acc& acc) {
    out << scope << "," << acc.n << "," << io::format_fixed(acc.lo, 1) << "," << io::format_fixed(acc.hi, 1) << ","
        << io::format_fixed(acc.total / static_cast<double>(acc.n), 1) << "\n";
  };
  out << "scope,n,min,max,mean\n";
  line("all", all);
  for (const auto& activity : order) line("activity=" + activity, per[activity]);
  return kExitOk;
}

}  // namespace

void RunConfig::validate() const {
  for (const auto& [path, flag] : {std::pair{&skeletons, "--skeletons"}, std::pair{&compendium, "--compendium"},
                                   std::pair{&body_model, "--body-model"}, std::pair{&hr_study, "--hr-study"},
                                   std::pair{&annotations, "--annotations"}, std::pair{&manifest, "--manifest"},
                                   std::pair{&predictions, "--predictions"}, std::pair{&pred_dists, "--pred-dists"}}) {
    require_file(*path, flag);
  }
  annotation.validate();
  codec.validate();
  conversion.validate();
  if (ratio.train + ratio.test == 0) throw Error(ErrorKind::kInvalidParameter, "ratio must be non-zero");
}

std::string synth_corpus(const SynthCorpusParams& params) {
  if (params.activities < 1 || params.samples_per_activity < 1) {
    throw Error(ErrorKind::kInvalidParameter, "activity and sample counts must be >= 1");
  }
  if (!(params.amp_min >= 0.0) || !(params.amp_max >= params.amp_min)) {
    throw Error(ErrorKind::kInvalidParameter, "need 0 <= amp-min <= amp-max");
  }
  if (!(params.jitter >= 0.0) || !(params.jitter < 1.0)) {
    throw Error(ErrorKind::kInvalidParameter, "jitter must be in [0, 1)");
  }
  rng::Engine engine(params.seed);
  std::string text;
  for (std::size_t a = 0; a < params.activities; ++a) {
    const double t = params.activities > 1 ? static_cast<double>(a) / static_cast<double>(params.activities - 1) : 0.0;
    const double tier = params.amp_min + (params.amp_max - params.amp_min) * t;
    char activity[32];
    std::snprintf(activity, sizeof(activity), "activity_%02zu", a);
    for (std::size_t s = 0; s < params.samples_per_activity; ++s) {
      char sample_id[48];
      std::snprintf(sample_id, sizeof(sample_id), "a%02zu_s%03zu", a, s);
      SynthParams sp;
      sp.amplitude_m = tier * rng::uniform(engine, 1.0 - params.jitter, 1.0 + params.jitter);
      sp.freq_hz = params.freq_hz;
      sp.fps = params.fps;
      sp.frames = params.frames;
      sp.joints = params.joints;
      sp.seed = engine();
      sp.sample_id = sample_id;
      sp.activity = activity;
      text += format_skeleton_record(synth_sequence(sp));
      text += '\n';
    }
  }
  return text;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Caloric expenditure from skeleton motion: annotation, splits, prediction and evaluation", "kcalpose"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string skeletons, compendium, body_model, hr_study, annotations, manifest, predictions, pred_dists, out_path;
  std::string mode = "dimensional";
  std::string heldout;
  std::string ratio = "7:3";
  std::string weight_unit = "kg";
  std::size_t window = 0;
  std::size_t overlap = 0;
  SynthCorpusParams synth;

  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "Output file")->required(); };
  auto add_skeleton_inputs = [&](CLI::App* cmd) {
    cmd->add_option("--skeletons", skeletons, "Skeleton records (JSON lines)")->required();
    cmd->add_option("--body-model", body_model, "Body model file (default: shipped model for 25/17 joints)");
    cmd->add_option("--mode", mode, "Hourly conversion")->check(CLI::IsMember({"dimensional", "paper-literal"}));
  };
  auto add_codec = [&](CLI::App* cmd) {
    cmd->add_option("--bins", cfg.codec.n_bins, "Number of 1-kcal bins");
    cmd->add_option("--sigma", cfg.codec.sigma, "Soft-label standard deviation (kcal)");
  };

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic skeleton corpus");
  add_out(synth_cmd);
  synth_cmd->add_option("--activities", synth.activities, "Number of activities");
  synth_cmd->add_option("--samples", synth.samples_per_activity, "Samples per activity");
  synth_cmd->add_option("--frames", synth.frames, "Frames per sample");
  synth_cmd->add_option("--joints", synth.joints, "Joints per frame");
  synth_cmd->add_option("--fps", synth.fps, "Frame rate (Hz)");
  synth_cmd->add_option("--freq", synth.freq_hz, "Motion frequency (Hz)");
  synth_cmd->add_option("--amp-min", synth.amp_min, "Amplitude of the first activity tier (m)");
  synth_cmd->add_option("--amp-max", synth.amp_max, "Amplitude of the last activity tier (m)");
  synth_cmd->add_option("--jitter", synth.jitter, "Relative per-sample amplitude jitter");
  synth_cmd->add_option("--seed", cfg.seed, "Random seed");

  auto* energy_cmd = app.add_subcommand("energy", "Body-movement energy report per sample");
  add_out(energy_cmd);
  add_skeleton_inputs(energy_cmd);

  auto* annotate_cmd = app.add_subcommand("annotate", "Category and sample-level caloric annotations");
  add_out(annotate_cmd);
  add_skeleton_inputs(annotate_cmd);
  annotate_cmd->add_option("--compendium", compendium, "Compendium table activity,kcal_per_hour");
  annotate_cmd->add_option("--hr-study", hr_study, "Heart-rate study file");
  annotate_cmd->add_option("--hr-weight-unit", weight_unit, "Weight unit in the heart-rate study")
      ->check(CLI::IsMember({"kg", "lb"}));
  annotate_cmd->add_option("--f-max", cfg.annotation.f_max, "Maximum fluctuation (kcal/h)");
  annotate_cmd->add_option("--l-max", cfg.annotation.l_max, "Maximum calorie limit (kcal/h)");

  auto* split_cmd = app.add_subcommand("split", "Train / test_known / test_new manifest");
  add_out(split_cmd);
  split_cmd->add_option("--annotations", annotations, "Annotation file")->required();
  split_cmd->add_option("--seed", cfg.seed, "Random seed");
  split_cmd->add_option("--heldout", heldout, "Comma-separated held-out activities");
  split_cmd->add_option("--ratio", ratio, "train:test ratio for known activities");

  auto* predict_cmd = app.add_subcommand("predict", "Skeleton forward predictions");
  add_out(predict_cmd);
  add_skeleton_inputs(predict_cmd);
  predict_cmd->add_option("--window", window, "Sliding window length in frames (0 = whole clip)");
  predict_cmd->add_option("--overlap", overlap, "Window overlap in frames");

  auto* eval_cmd = app.add_subcommand("eval", "MAE / SPC / NLL report per split");
  add_out(eval_cmd);
  eval_cmd->add_option("--annotations", annotations, "Ground-truth annotation file")->required();
  eval_cmd->add_option("--manifest", manifest, "Split manifest")->required();
  eval_cmd->add_option("--predictions", predictions, "Scalar predictions sample_id,kcal_per_hour");
  eval_cmd->add_option("--pred-dists", pred_dists, "Distribution dump predictions");
  eval_cmd->add_flag("--baselines", cfg.baselines, "Add average and random baseline rows");
  eval_cmd->add_flag("--per-activity", cfg.per_activity, "Add per-activity rows");
  eval_cmd->add_option("--seed", cfg.seed, "Seed of the random baseline");
  eval_cmd->add_option("--l-max", cfg.annotation.l_max, "Upper end of the random baseline range");
  add_codec(eval_cmd);

  auto* softlabel_cmd = app.add_subcommand("softlabel", "Dump Gaussian soft labels for annotations");
  add_out(softlabel_cmd);
  softlabel_cmd->add_option("--annotations", annotations, "Annotation file")->required();
  add_codec(softlabel_cmd);

  auto* stats_cmd = app.add_subcommand("stats", "Min / max / mean per activity");
  stats_cmd->add_option("--annotations", annotations, "Annotation file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    auto opt_path = [](const std::string& s) -> std::optional<fs::path> {
      if (s.empty()) return std::nullopt;
      return fs::path(s);
    };
    cfg.skeletons = opt_path(skeletons);
    cfg.compendium = opt_path(compendium);
    cfg.body_model = opt_path(body_model);
    cfg.hr_study = opt_path(hr_study);
    cfg.annotations = opt_path(annotations);
    cfg.manifest = opt_path(manifest);
    cfg.predictions = opt_path(predictions);
    cfg.pred_dists = opt_path(pred_dists);
    cfg.out = out_path;
    cfg.conversion.mode = parse_conversion_mode(mode);
    cfg.hr_weight_unit = parse_weight_unit(weight_unit);
    cfg.heldout = parse_name_list(heldout);
    cfg.ratio = parse_ratio(ratio);
    synth.seed = cfg.seed;
    cfg.validate();

    if (synth_cmd->parsed()) return cmd_synth(cfg, synth, out);
    if (energy_cmd->parsed()) return cmd_energy(cfg, out);
    if (annotate_cmd->parsed()) return cmd_annotate(cfg, out);
    if (split_cmd->parsed()) return cmd_split(cfg, out);
    if (predict_cmd->parsed()) {
      std::optional<WindowSpec> spec;
      if (window > 0) spec = WindowSpec{window, overlap};
      return cmd_predict(cfg, spec, out);
    }
    if (eval_cmd->parsed()) return cmd_eval(cfg, out);
    if (softlabel_cmd->parsed()) return cmd_softlabel(cfg, out);
    if (stats_cmd->parsed()) return cmd_stats(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  err << "error: no subcommand\n";
  return kExitInputError;
}

}  // namespace kcalpose::cli
