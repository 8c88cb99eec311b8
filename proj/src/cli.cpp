#include "scarforge/cli.hpp"

#include "scarforge/dataset_io.hpp"
#include "scarforge/errors.hpp"
#include "scarforge/pipeline.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace scarforge::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& s, const std::string& what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(ErrorKind::Parse, what + ": \"" + s + "\" is not a number");
    return v;
}

std::uint64_t parse_seed(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        fail(ErrorKind::Parse, what + ": \"" + s + "\" is not an unsigned 64-bit seed");
    return v;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

SynthConfig parse_config(std::string_view text, SynthConfig cfg) {
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        const std::string where = "config line " + std::to_string(number);
        if (eq == std::string::npos)
            fail(ErrorKind::Parse, where + ": expected key=value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));

        if (key == "lambda") cfg.lambda = parse_real(value, where);
        else if (key == "s1") cfg.s1 = parse_real(value, where);
        else if (key == "s2") cfg.s2 = parse_real(value, where);
        else if (key == "b1") cfg.b1 = parse_real(value, where);
        else if (key == "b2") cfg.b2 = parse_real(value, where);
        else if (key == "seed") cfg.master_seed = parse_seed(value, where);
        else if (key.starts_with("rho_")) {
            std::string name = key.substr(4);
            std::replace(name.begin(), name.end(), '_', '-');
            auto extent = extent_from_string(name);
            const auto comma = value.find(',');
            if (!extent)
                fail(ErrorKind::Parse, where + ": unknown extent in key \"" + key + "\"");
            if (comma == std::string::npos)
                fail(ErrorKind::Parse, where + ": rho ranges are written \"min,max\"");
            cfg.rho_for(*extent) = {parse_real(trim(value.substr(0, comma)), where),
                                    parse_real(trim(value.substr(comma + 1)), where)};
        } else {
            fail(ErrorKind::Parse, where + ": unknown key \"" + key + "\"");
        }
    }
    cfg.validate();
    return cfg;
}

SynthConfig load_config(const std::filesystem::path& path, SynthConfig base) {
    return parse_config(read_text(path), base);
}

std::vector<Embedding> parse_embedding_table(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    std::size_t dim = 0;
    std::vector<Embedding> rows;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> words;
        for (std::string w; ls >> w;)
            words.push_back(w);
        if (words.empty())
            continue;
        const std::string where = "embedding line " + std::to_string(number);
        if (dim == 0) {
            if (words.size() != 2 || words[0] != "dim")
                fail(ErrorKind::Parse, where + ": expected header \"dim <p>\"");
            const double p = parse_real(words[1], where);
            if (!(p >= 1.0) || p != std::floor(p))
                fail(ErrorKind::Parse, where + ": dimension must be a positive integer");
            dim = static_cast<std::size_t>(p);
            continue;
        }
        if (words.size() != dim)
            fail(ErrorKind::Parse, where + ": expected " + std::to_string(dim) + " values, got " +
                                       std::to_string(words.size()));
        Embedding row;
        row.reserve(dim);
        for (const auto& w : words)
            row.push_back(parse_real(w, where));
        rows.push_back(std::move(row));
    }
    if (dim == 0)
        fail(ErrorKind::Parse, "embedding table has no \"dim <p>\" header");
    return rows;
}

namespace {

std::vector<ClassLabel> parse_labels(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<ClassLabel> labels;
    for (std::string w; in >> w;) {
        auto l = class_label_from_string(w);
        if (!l)
            fail(ErrorKind::Parse, "unknown label \"" + w + "\" (use positive/negative or 1/0)");
        labels.push_back(*l);
    }
    return labels;
}

struct Options {
    std::string manifest;
    std::string out;
    std::string config;
    std::string replay;
    std::uint64_t seed = 0;
    double lambda = 0.0;
    unsigned jobs = 1;
    std::size_t record = 0;
    std::string image_emb, text_emb, labels;
    double tau = 0.07;
    bool clip_loss = false;
    PhantomSetOptions phantom;
};

int cmd_preprocess(const Options& o, std::ostream& out) {
    const auto records = read_manifest(o.manifest);
    const fs::path dir(o.out);
    std::vector<DatasetRecord> processed(records.size());
    parallel_for(records.size(), o.jobs, [&](std::size_t i) {
        const PreparedSlice slice = prepare_record(records[i]);
        DatasetRecord r = records[i];
        r.image_path = image_relpath(i);
        r.myo_mask_path = mask_relpath(i);
        save_image(slice.image, dir / r.image_path, ImageFormat::F32);
        save_mask(slice.myo, dir / r.myo_mask_path);
        r.rvip_anterior = slice.rvips.anterior;
        r.rvip_inferior = slice.rvips.inferior;
        r.spacing_mm = slice.image.spacing();
        processed[i] = std::move(r);
    });
    write_manifest(processed, dir / kAugmentedManifestName);
    out << "preprocessed " << processed.size() << " records into " << dir.string() << "\n";
    return kSuccess;
}

int cmd_segments(const Options& o, std::ostream& out, std::ostream& err) {
    const auto records = read_manifest(o.manifest);
    if (o.record >= records.size()) {
        err << "record " << o.record << " out of range (manifest has " << records.size() << ")\n";
        return kDataError;
    }
    const PreparedSlice slice = prepare_record(records[o.record]);
    const SliceAnatomy anatomy = analyze_slice(slice);
    const fs::path dir(o.out);
    save_image(slice.image, dir / "image.f32", ImageFormat::F32);
    save_mask(slice.myo, dir / "myo.png");
    save_mask(anatomy.segments, dir / "segments.png");
    save_mask(anatomy.layers, dir / "layers.png");

    out << "record " << o.record << " (" << to_string(slice.level) << ")\n";
    for (auto label : anatomy.segments.alphabet())
        if (label != 0)
            out << "segment " << label << "\t" << anatomy.segments.count(label) << " px\n";
    for (auto label : anatomy.layers.alphabet())
        if (label != 0)
            out << "layer " << label << "\t" << anatomy.layers.count(label) << " px\n";
    return kSuccess;
}

int cmd_synth(const Options& o, const CLI::App& sub, std::ostream& out, std::ostream& err) {
    const fs::path dir(o.out);
    if (!o.replay.empty()) {
        const auto manifest = read_augmented_manifest(o.replay);
        replay_dataset(manifest, dir, o.jobs);
        out << "replayed " << manifest.size() << " records\n";
        out << "dataset_hash " << dataset_hash(dir) << "\n";
        return kSuccess;
    }
    if (o.manifest.empty()) {
        err << "synth: --manifest is required unless --replay is given\n";
        return kUsageError;
    }

    // Precedence: flags > SCARFORGE_SEED > config file > defaults.
    SynthConfig cfg;
    if (!o.config.empty())
        cfg = load_config(o.config, cfg);
    if (const char* env = std::getenv("SCARFORGE_SEED"); env && *env)
        cfg.master_seed = parse_seed(env, "SCARFORGE_SEED");
    if (sub.count("--seed"))
        cfg.master_seed = o.seed;
    if (sub.count("--lambda"))
        cfg.lambda = o.lambda;
    cfg.validate();

    const auto records = read_manifest(o.manifest);
    SynthRunOptions run;
    run.jobs = o.jobs;
    run.on_warning = [&err](const std::string& w) { err << "warning: " << w << "\n"; };
    const auto emitted = synthesize_dataset(records, cfg, dir, run);
    const auto synthetic = std::count_if(emitted.begin(), emitted.end(),
                                         [](const AugmentedRecord& r) { return r.synthetic; });
    out << "wrote " << emitted.size() << " records (" << synthetic << " synthetic) to "
        << dir.string() << "\n";
    out << "dataset_hash " << dataset_hash(dir) << "\n";
    return kSuccess;
}

int cmd_score(const Options& o, std::ostream& out, std::ostream& err) {
    if (!(o.tau > 0.0)) {
        err << "score: --tau must be positive\n";
        return kUsageError;
    }
    const auto images = parse_embedding_table(read_text(o.image_emb));
    const auto texts = parse_embedding_table(read_text(o.text_emb));
    const std::size_t n = images.size();

    if (o.clip_loss) {
        if (texts.size() != n || n < 2) {
            err << "score: --clip-loss needs equal image/text row counts (>= 2); got " << n << " and "
                << texts.size() << "\n";
            return kDataError;
        }
        out << "clip_loss\t" << std::setprecision(12) << clip_loss({images, texts}, o.tau) << "\n";
        return kSuccess;
    }

    const bool shared = texts.size() == 2;
    if (!shared && texts.size() != 2 * n) {
        err << "score: text embeddings must hold 2 rows (positive, negative) or 2 per image; got "
            << texts.size() << " for " << n << " images\n";
        return kDataError;
    }
    std::vector<ClassLabel> truth;
    if (!o.labels.empty()) {
        truth = parse_labels(read_text(o.labels));
        if (truth.size() != n) {
            err << "score: " << truth.size() << " labels for " << n << " images\n";
            return kDataError;
        }
    }

    std::vector<ClassLabel> predictions;
    predictions.reserve(n);
    out << "index\tlabel\tmargin\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto& pos = shared ? texts[0] : texts[2 * i];
        const auto& neg = shared ? texts[1] : texts[2 * i + 1];
        const ZeroShotDecision d = zero_shot_decide(images[i], pos, neg);
        predictions.push_back(d.label);
        out << i << "\t" << to_string(d.label) << "\t" << std::setprecision(9) << d.margin << "\n";
    }
    if (!truth.empty())
        out << "balanced_accuracy\t" << std::setprecision(9) << balanced_accuracy(predictions, truth)
            << "\n";
    return kSuccess;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
    const ValidationReport report = validate_dataset(o.out);
    for (const auto& v : report.violations)
        err << "violation: " << v << "\n";
    out << "records " << report.records << "\n";
    out << "synthetic " << report.synthetic << "\n";
    out << "replay_checked " << report.replay_checked << "\n";
    out << "violations " << report.violations.size() << "\n";
    out << "dataset_hash " << report.dataset_hash << "\n";
    return report.ok() ? kSuccess : kInvariantViolation;
}

int cmd_phantom(const Options& o, std::ostream& out) {
    const fs::path manifest = write_phantom_set(o.out, o.phantom);
    out << "wrote " << o.phantom.count << " phantom records to " << manifest.string() << "\n";
    return kSuccess;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"scarforge: synthetic myocardial-scar image/caption datasets"};
    app.name("scarforge");
    app.require_subcommand(1);
    Options o;

    auto* pre = app.add_subcommand("preprocess", "resample, crop, normalise and orient every record");
    pre->add_option("--manifest", o.manifest, "input JSONL manifest")->required();
    pre->add_option("--out", o.out, "output directory")->required();
    pre->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* seg = app.add_subcommand("segments", "dump AHA segment and layer maps for one record");
    seg->add_option("--record", o.record, "zero-based record index")->required();
    seg->add_option("--manifest", o.manifest, "input JSONL manifest")->required();
    seg->add_option("--out", o.out, "output directory")->required();

    auto* syn = app.add_subcommand("synth", "run the scar augmentation pipeline");
    syn->add_option("--manifest", o.manifest, "input JSONL manifest");
    syn->add_option("--config", o.config, "key=value synthesis config")->check(CLI::ExistingFile);
    syn->add_option("--out", o.out, "output directory")->required();
    syn->add_option("--seed", o.seed, "master seed (overrides SCARFORGE_SEED and config)");
    syn->add_option("--lambda", o.lambda, "augmentation probability (overrides config)");
    syn->add_option("--replay", o.replay, "regenerate from an emitted manifest")->check(CLI::ExistingFile);
    syn->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* score = app.add_subcommand("score", "zero-shot decisions over external embeddings");
    score->add_option("--image-emb", o.image_emb, "image embedding table")->required()->check(CLI::ExistingFile);
    score->add_option("--text-emb", o.text_emb, "text embedding table")->required()->check(CLI::ExistingFile);
    score->add_option("--labels", o.labels, "ground-truth labels, one per line")->check(CLI::ExistingFile);
    score->add_option("--tau", o.tau, "temperature for --clip-loss");
    score->add_flag("--clip-loss", o.clip_loss, "report the symmetric contrastive loss of paired rows");

    auto* val = app.add_subcommand("validate", "re-check invariants of an emitted dataset");
    val->add_option("--out", o.out, "dataset directory")->required()->check(CLI::ExistingDirectory);

    auto* ph = app.add_subcommand("phantom", "write an annulus phantom input set");
    ph->group("");
    ph->add_option("--out", o.out, "output directory")->required();
    ph->add_option("--count", o.phantom.count, "number of records");
    ph->add_option("--seed", o.phantom.seed, "phantom seed");
    ph->add_option("--size", o.phantom.size, "grid side in pixels");
    ph->add_option("--spacing", o.phantom.spacing_mm, "pixel spacing in mm");
    ph->add_option("--positive-every", o.phantom.positive_every, "every k-th record LGE-positive");

    std::vector<const char*> argv{"scarforge"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return kUsageError;
    }

    try {
        if (pre->parsed()) return cmd_preprocess(o, out);
        if (seg->parsed()) return cmd_segments(o, out, err);
        if (syn->parsed()) return cmd_synth(o, *syn, out, err);
        if (score->parsed()) return cmd_score(o, out, err);
        if (val->parsed()) return cmd_validate(o, out, err);
        if (ph->parsed()) return cmd_phantom(o, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace scarforge::cli
