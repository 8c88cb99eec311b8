#include "scarforge/pipeline.hpp"

#include "scarforge/errors.hpp"
#include "scarforge/phantoms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <variant>

namespace scarforge {

namespace {

std::string numbered(const char* dir, std::uint64_t index, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s/%06llu%s", dir, static_cast<unsigned long long>(index), ext);
    return buf;
}

bool inside_extent(Point2 p, GridSize size) {
    return p.x >= -0.5 && p.y >= -0.5 && p.x < size.width - 0.5 && p.y < size.height - 0.5;
}

} // namespace

std::string image_relpath(std::uint64_t index) { return numbered("images", index, ".f32"); }
std::string mask_relpath(std::uint64_t index) { return numbered("masks", index, ".png"); }
std::string field_relpath(std::uint64_t index) { return numbered("fields", index, ".f32"); }

PreparedSlice prepare_record(const DatasetRecord& record) {
    GrayImage image = load_image(record.image_path, record.spacing_mm);
    image.set_spacing(record.spacing_mm);
    const LabeledMask mask = load_mask(record.myo_mask_path);
    if (mask.size() != image.size())
        fail(ErrorKind::RejectedInput, record.myo_mask_path + ": mask grid differs from image grid");
    for (Point2 p : {record.rvip_anterior, record.rvip_inferior})
        if (!inside_extent(p, image.size()))
            fail(ErrorKind::RejectedInput, record.image_path + ": RVIP landmark lies outside the image");

    const PreprocessOutput pre =
        preprocess(image, mask, {record.rvip_anterior, record.rvip_inferior});
    const LabeledMask myo = binarize(pre.myo_mask);
    const Point2 lv = centroid(myo, 1);
    OrientedSlice oriented = normalize_orientation(pre.image, {myo}, pre.rvips, lv);
    if (oriented.masks.front().count_nonzero() == 0)
        fail(ErrorKind::RejectedInput, record.image_path + ": myocardium lost by orientation normalisation");

    PreparedSlice slice;
    slice.image = std::move(oriented.image);
    slice.myo = std::move(oriented.masks.front());
    slice.rvips = oriented.rvips;
    slice.level = record.slice_level;
    slice.lge_negative = record.lge_negative;
    return slice;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

namespace {

void write_record_files(const fs::path& out_dir, const AugmentedRecord& rec, const GrayImage& image,
                        const LabeledMask& myo, const GrayImage* field) {
    save_image(image, out_dir / rec.output_image_path, ImageFormat::F32);
    save_mask(myo, out_dir / rec.myo_mask_path);
    if (field && rec.scar_field_path)
        save_image(*field, out_dir / *rec.scar_field_path, ImageFormat::F32);
}

} // namespace

std::vector<AugmentedRecord> synthesize_dataset(const std::vector<DatasetRecord>& records,
                                                const SynthConfig& cfg, const fs::path& out_dir,
                                                const SynthRunOptions& options) {
    cfg.validate();
    const std::string digest = config_digest(cfg);
    std::vector<AugmentedRecord> out(records.size());
    std::vector<std::optional<std::string>> warnings(records.size());

    parallel_for(records.size(), options.jobs, [&](std::size_t i) {
        const DatasetRecord& src = records[i];
        const PreparedSlice slice = prepare_record(src);

        AugmentedRecord& rec = out[i];
        rec.record_index = i;
        rec.output_image_path = image_relpath(i);
        rec.myo_mask_path = mask_relpath(i);
        rec.rvips = slice.rvips;
        rec.source = src;

        if (!src.lge_negative) {
            rec.caption = inference_queries(src.slice_level).positive;
            rec.label = ClassLabel::Positive;
            write_record_files(out_dir, rec, slice.image, slice.myo, nullptr);
            return;
        }
        AugmentationResult res = augment_record(slice, cfg, i);
        warnings[i] = res.warning;
        rec.caption = res.caption.text;
        rec.label = res.caption.label;
        rec.synthetic = res.provenance.has_value();
        if (res.provenance) {
            rec.provenance = ProvenanceRecord{*res.provenance, digest};
            rec.scar_field_path = field_relpath(i);
        }
        write_record_files(out_dir, rec, res.image, slice.myo, res.field ? &*res.field : nullptr);
    });

    write_augmented(out, out_dir);
    if (options.on_warning)
        for (const auto& w : warnings)
            if (w)
                options.on_warning(*w);
    return out;
}

GrayImage regenerate_image(const AugmentedRecord& record) {
    const PreparedSlice slice = prepare_record(record.source);
    if (!record.provenance)
        return slice.image;
    return replay_scar(slice, record.provenance->scar).image;
}

std::vector<AugmentedRecord> replay_dataset(const std::vector<AugmentedRecord>& manifest,
                                            const fs::path& out_dir, unsigned jobs) {
    parallel_for(manifest.size(), jobs, [&](std::size_t i) {
        const AugmentedRecord& rec = manifest[i];
        const PreparedSlice slice = prepare_record(rec.source);
        if (rec.provenance) {
            ReplayResult r = replay_scar(slice, rec.provenance->scar);
            write_record_files(out_dir, rec, r.image, slice.myo, &r.field);
        } else {
            write_record_files(out_dir, rec, slice.image, slice.myo, nullptr);
        }
    });
    write_augmented(manifest, out_dir);
    return manifest;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_record(const fs::path& out_dir, const AugmentedRecord& rec, ValidationReport& report,
                  std::vector<std::string>& v) {
    const std::string where = "record " + std::to_string(rec.record_index) + ": ";
    auto violation = [&](const std::string& what) { v.push_back(where + what); };

    // Caption grammar and label consistency.
    try {
        ParsedCaption parsed = parse_caption(rec.caption);
        if (auto* spec = std::get_if<ScarSpec>(&parsed)) {
            if (rec.label != ClassLabel::Positive || !rec.synthetic || !rec.provenance)
                violation("scar caption on a record that is not a positive synthetic sample");
            else if (!(*spec == rec.provenance->scar.spec))
                violation("caption does not describe the recorded scar parameters");
            if (spec->level != rec.source.slice_level)
                violation("caption slice level differs from the source record");
        } else if (auto* neg = std::get_if<NegativeMarker>(&parsed)) {
            if (rec.label != ClassLabel::Negative || rec.synthetic || rec.provenance)
                violation("negative caption on a positive or synthetic record");
            if (neg->level != rec.source.slice_level)
                violation("caption slice level differs from the source record");
        } else {
            const auto& pos = std::get<GenericPositiveMarker>(parsed);
            if (rec.label != ClassLabel::Positive || rec.synthetic || rec.source.lge_negative)
                violation("generic positive caption on a record that is not a real LGE-positive slice");
            if (pos.level != rec.source.slice_level)
                violation("caption slice level differs from the source record");
        }
    } catch (const Error& e) {
        violation(e.what());
    }
    if (rec.synthetic != rec.provenance.has_value() || rec.synthetic != rec.scar_field_path.has_value())
        violation("synthetic flag, provenance and scar field disagree");

    const GrayImage image = load_image(out_dir / rec.output_image_path);
    const LabeledMask myo = load_mask(out_dir / rec.myo_mask_path);
    if (myo.size() != image.size())
        violation("mask grid differs from image grid");
    for (float px : image.pixels())
        if (!(px >= 0.0f && px <= 1.0f)) {
            violation("image intensity outside [0, 1]");
            break;
        }

    if (rec.provenance && rec.scar_field_path) {
        ++report.synthetic;
        const GrayImage field = load_image(out_dir / *rec.scar_field_path);
        if (field.size() != myo.size()) {
            violation("scar field grid differs from mask grid");
        } else {
            bool range_ok = true, contained = true;
            float peak = 0.0f;
            for (std::size_t i = 0; i < field.pixels().size(); ++i) {
                const float m = field.pixels()[i];
                range_ok = range_ok && m >= 0.0f && m <= 1.0f;
                contained = contained && (m == 0.0f || myo.labels()[i] != 0);
                peak = std::max(peak, m);
            }
            if (!range_ok)
                violation("scar field outside [0, 1]");
            if (!contained)
                violation("scar field extends outside the myocardium");
            if (peak != 0.0f && peak != 1.0f)
                violation("scar field maximum is neither 0 nor 1");

            PreparedSlice slice;
            slice.myo = binarize(myo);
            slice.rvips = rec.rvips;
            slice.level = rec.source.slice_level;
            const auto& prov = *rec.provenance;
            try {
                const SliceAnatomy anatomy = analyze_slice(slice);
                const LabeledMask candidate = candidate_region(
                    slice.myo, location_to_segments(prov.scar.spec.location, prov.scar.spec.level),
                    prov.scar.spec.extent, anatomy.segments, anatomy.layers);
                const Point2 c = prov.scar.params.center;
                const int cx = static_cast<int>(std::lround(c.x));
                const int cy = static_cast<int>(std::lround(c.y));
                if (!candidate.size().contains(cx, cy) || candidate.at(cx, cy) == 0)
                    violation("scar center lies outside the candidate region");
            } catch (const Error& e) {
                violation(std::string("candidate region could not be rebuilt: ") + e.what());
            }
        }
    }

    // Determinism: regenerate from the source when it is reachable.
    if (fs::exists(rec.source.image_path) && fs::exists(rec.source.myo_mask_path)) {
        const GrayImage again = regenerate_image(rec);
        if (encode_f32(again) != read_file_bytes(out_dir / rec.output_image_path))
            violation("regenerated image differs from the stored image");
        ++report.replay_checked;
    }
}

} // namespace

ValidationReport validate_dataset(const fs::path& out_dir) {
    ValidationReport report;
    const auto records = read_augmented_manifest(out_dir / kAugmentedManifestName);
    report.records = records.size();
    for (const auto& rec : records)
        check_record(out_dir, rec, report, report.violations);
    report.dataset_hash = dataset_hash(out_dir);
    return report;
}

// ---------------------------------------------------------------------------
// Phantom inputs

fs::path write_phantom_set(const fs::path& dir, const PhantomSetOptions& options) {
    fs::create_directories(dir);
    std::vector<DatasetRecord> records;
    const double px_per_mm = 1.0 / options.spacing_mm;
    const double half = options.size / 2.0;
    for (std::size_t i = 0; i < options.count; ++i) {
        Rng rng(record_seed(options.seed, i));
        const Point2 center{half + rng.uniform(-8.0, 8.0), half + rng.uniform(-8.0, 8.0)};
        const double r_inner = rng.uniform(18.0, 24.0) * px_per_mm;
        const double r_outer = r_inner + rng.uniform(7.0, 11.0) * px_per_mm;
        const double anterior_angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double separation = rng.uniform(100.0, 140.0) * std::numbers::pi / 180.0;
        const int sweep = rng.next_unit() < 0.5 ? -1 : 1;
        // Nulled (dark) myocardium as in an LGE-negative slice, plus a bright
        // body-wall ring so that max(I) is set by non-cardiac tissue.
        Phantom ph = make_annulus(center, r_inner, r_outer, {options.size, options.size}, 0.25,
                                  0.02, rng, {options.spacing_mm, options.spacing_mm});
        const double body_inner = 44.0 * px_per_mm;
        const double body_outer = 48.0 * px_per_mm;
        for (int y = 0; y < options.size; ++y)
            for (int x = 0; x < options.size; ++x) {
                const double r = std::hypot(x - center.x, y - center.y);
                if (r >= body_inner && r <= body_outer)
                    ph.image.at(x, y) += 0.8f;
            }
        const RvipPair rvips = place_rvips(center, r_outer, anterior_angle, separation, sweep);

        char stem[32];
        std::snprintf(stem, sizeof stem, "phantom_%04zu", i);
        const fs::path image_path = dir / (std::string(stem) + ".f32");
        const fs::path mask_path = dir / (std::string(stem) + "_myo.png");
        save_image(ph.image, image_path, ImageFormat::F32);
        save_mask(ph.myo, mask_path);

        DatasetRecord r;
        r.image_path = image_path.filename().string();
        r.myo_mask_path = mask_path.filename().string();
        r.rvip_anterior = rvips.anterior;
        r.rvip_inferior = rvips.inferior;
        r.spacing_mm = {options.spacing_mm, options.spacing_mm};
        r.slice_level = kAllLevels[i % 3];
        r.lge_negative = !(options.positive_every && (i + 1) % options.positive_every == 0);
        char pid[32];
        std::snprintf(pid, sizeof pid, "phantom-%03zu", i / 3);
        r.patient_id = pid;
        records.push_back(std::move(r));
    }
    const fs::path manifest = dir / "manifest.jsonl";
    write_manifest(records, manifest);
    return manifest;
}

} // namespace scarforge
