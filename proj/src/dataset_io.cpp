#include "scarforge/dataset_io.hpp"

#include "scarforge/errors.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace scarforge {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Raw file helpers

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Io, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file_bytes(const fs::path& path, std::span<const std::uint8_t> bytes) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(ErrorKind::Io, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        fail(ErrorKind::Io, "write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// F32

namespace {

constexpr std::string_view kF32Magic = "F32 ";
constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

std::string format_real(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace

std::vector<std::uint8_t> encode_f32(const GrayImage& img) {
    const std::string header = "F32 " + std::to_string(img.width()) + " " +
                               std::to_string(img.height()) + " " + format_real(img.spacing().x) +
                               " " + format_real(img.spacing().y) + "\n";
    std::vector<std::uint8_t> bytes(header.begin(), header.end());
    bytes.reserve(header.size() + img.size().area() * 4);
    for (float v : img.pixels()) {
        auto bits = std::bit_cast<std::uint32_t>(v);
        for (int k = 0; k < 4; ++k)
            bytes.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
    }
    return bytes;
}

GrayImage decode_f32(std::span<const std::uint8_t> bytes, const std::string& origin) {
    auto newline = std::find(bytes.begin(), bytes.end(), std::uint8_t{'\n'});
    if (newline == bytes.end())
        fail(ErrorKind::Io, origin + ": F32 header is not terminated");
    const std::string header(bytes.begin(), newline);
    if (!header.starts_with(kF32Magic))
        fail(ErrorKind::Io, origin + ": not an F32 image");
    std::istringstream is(header.substr(kF32Magic.size()));
    long long w = 0, h = 0;
    double sx = 0.0, sy = 0.0;
    if (!(is >> w >> h >> sx >> sy) || !(is >> std::ws).eof())
        fail(ErrorKind::Io, origin + ": malformed F32 header \"" + header + "\"");
    if (w <= 0 || h <= 0 || w > (1 << 20) || h > (1 << 20))
        fail(ErrorKind::Io, origin + ": F32 dimensions must be positive");
    if (!(sx > 0.0) || !(sy > 0.0))
        fail(ErrorKind::Io, origin + ": F32 spacing must be positive");

    const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    const auto payload = static_cast<std::size_t>(bytes.end() - (newline + 1));
    if (payload < count * 4)
        fail(ErrorKind::Io, origin + ": truncated F32 payload (" + std::to_string(payload) +
                                " of " + std::to_string(count * 4) + " bytes)");
    if (payload > count * 4)
        fail(ErrorKind::Io, origin + ": trailing bytes after F32 payload");

    std::vector<float> data(count);
    const std::uint8_t* p = &*(newline + 1);
    for (std::size_t i = 0; i < count; ++i, p += 4) {
        const std::uint32_t bits = std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) |
                                   (std::uint32_t(p[2]) << 16) | (std::uint32_t(p[3]) << 24);
        data[i] = std::bit_cast<float>(bits);
    }
    try {
        return GrayImage({static_cast<int>(w), static_cast<int>(h)}, {sx, sy}, std::move(data));
    } catch (const Error& e) {
        fail(ErrorKind::Io, origin + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// PNG (libpng)

namespace {

struct PngPixels {
    int width = 0;
    int height = 0;
    int bit_depth = 8;
    std::vector<std::uint16_t> codes;
};

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void png_error_handler(png_structp png, png_const_charp message) {
    auto* what = static_cast<std::string*>(png_get_error_ptr(png));
    if (what)
        *what = message;
    png_longjmp(png, 1);
}

void png_warning_handler(png_structp, png_const_charp) {}

PngPixels read_png(const fs::path& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file)
        fail(ErrorKind::Io, "cannot open " + path.string());

    std::string message;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_handler,
                                             png_warning_handler);
    if (!png)
        fail(ErrorKind::Io, "libpng initialisation failed");
    png_infop info = png_create_info_struct(png);
    PngPixels px;
    std::vector<png_bytep> rows;
    std::vector<std::uint8_t> buffer;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(ErrorKind::Io, path.string() + ": " + (message.empty() ? "invalid PNG" : message));
    }
    png_init_io(png, file.get());
    png_read_info(png, info);

    const int color = png_get_color_type(png, info);
    int depth = png_get_bit_depth(png, info);
    if (color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(ErrorKind::Io, path.string() + ": only grayscale PNG images are supported");
    }
    if (depth < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
        depth = 8;
    }
    if (depth == 16 && std::endian::native == std::endian::little)
        png_set_swap(png);
    png_read_update_info(png, info);

    px.width = static_cast<int>(png_get_image_width(png, info));
    px.height = static_cast<int>(png_get_image_height(png, info));
    px.bit_depth = depth;
    const std::size_t row_bytes = png_get_rowbytes(png, info);
    buffer.resize(row_bytes * static_cast<std::size_t>(px.height));
    rows.resize(static_cast<std::size_t>(px.height));
    for (int y = 0; y < px.height; ++y)
        rows[static_cast<std::size_t>(y)] = buffer.data() + row_bytes * static_cast<std::size_t>(y);
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    px.codes.resize(static_cast<std::size_t>(px.width) * static_cast<std::size_t>(px.height));
    for (int y = 0; y < px.height; ++y) {
        const std::uint8_t* row = rows[static_cast<std::size_t>(y)];
        for (int x = 0; x < px.width; ++x) {
            std::uint16_t code;
            if (depth == 16)
                std::memcpy(&code, row + 2 * x, 2);
            else
                code = row[x];
            px.codes[static_cast<std::size_t>(y) * static_cast<std::size_t>(px.width) +
                     static_cast<std::size_t>(x)] = code;
        }
    }
    return px;
}

void write_png(const fs::path& path, int width, int height, int bit_depth,
               const std::vector<std::uint16_t>& codes) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file)
        fail(ErrorKind::Io, "cannot write " + path.string());

    std::string message;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_handler,
                                              png_warning_handler);
    if (!png)
        fail(ErrorKind::Io, "libpng initialisation failed");
    png_infop info = png_create_info_struct(png);

    const std::size_t bpp = bit_depth == 16 ? 2 : 1;
    std::vector<std::uint8_t> buffer(codes.size() * bpp);
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (bpp == 2) {
            buffer[2 * i] = static_cast<std::uint8_t>(codes[i] >> 8); // PNG is big-endian
            buffer[2 * i + 1] = static_cast<std::uint8_t>(codes[i] & 0xFF);
        } else {
            buffer[i] = static_cast<std::uint8_t>(codes[i]);
        }
    }
    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
        rows[static_cast<std::size_t>(y)] =
            buffer.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(width) * bpp;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(ErrorKind::Io, path.string() + ": " + (message.empty() ? "PNG write failed" : message));
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

ImageFormat sniff(const std::vector<std::uint8_t>& bytes, const fs::path& path) {
    if (bytes.size() >= 8 && std::equal(std::begin(kPngMagic), std::end(kPngMagic), bytes.begin()))
        return ImageFormat::Png;
    if (bytes.size() >= kF32Magic.size() &&
        std::equal(kF32Magic.begin(), kF32Magic.end(), bytes.begin()))
        return ImageFormat::F32;
    fail(ErrorKind::Io, path.string() + ": unknown image format");
}

} // namespace

GrayImage load_image(const fs::path& path, Spacing png_spacing) {
    const auto bytes = read_file_bytes(path);
    if (sniff(bytes, path) == ImageFormat::F32)
        return decode_f32(bytes, path.string());
    const PngPixels px = read_png(path);
    const double max_code = px.bit_depth == 16 ? 65535.0 : 255.0;
    std::vector<float> data(px.codes.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<float>(px.codes[i] / max_code);
    return GrayImage({px.width, px.height}, png_spacing, std::move(data));
}

void save_image(const GrayImage& img, const fs::path& path, ImageFormat format) {
    if (img.empty())
        fail(ErrorKind::Argument, "cannot save an empty image");
    if (format == ImageFormat::F32) {
        write_file_bytes(path, encode_f32(img));
        return;
    }
    std::vector<std::uint16_t> codes(img.size().area());
    auto px = img.pixels();
    for (std::size_t i = 0; i < codes.size(); ++i)
        codes[i] = static_cast<std::uint16_t>(
            std::lround(std::clamp(static_cast<double>(px[i]), 0.0, 1.0) * 65535.0));
    write_png(path, img.width(), img.height(), 16, codes);
}

void save_image(const GrayImage& img, const fs::path& path) {
    save_image(img, path, path.extension() == ".png" ? ImageFormat::Png : ImageFormat::F32);
}

LabeledMask load_mask(const fs::path& path) {
    const auto bytes = read_file_bytes(path);
    if (sniff(bytes, path) == ImageFormat::F32) {
        const GrayImage img = decode_f32(bytes, path.string());
        std::vector<LabeledMask::Label> labels(img.size().area());
        auto px = img.pixels();
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (px[i] < 0.0f || px[i] != std::floor(px[i]))
                fail(ErrorKind::Io, path.string() + ": mask values must be non-negative integers");
            labels[i] = static_cast<LabeledMask::Label>(px[i]);
        }
        return LabeledMask(img.size(), std::move(labels));
    }
    const PngPixels px = read_png(path);
    std::vector<LabeledMask::Label> labels(px.codes.begin(), px.codes.end());
    return LabeledMask({px.width, px.height}, std::move(labels));
}

void save_mask(const LabeledMask& mask, const fs::path& path) {
    LabeledMask::Label top = 0;
    for (auto l : mask.labels())
        top = std::max(top, l);
    if (top > 65535)
        fail(ErrorKind::Argument, "label too large for a PNG mask");
    std::vector<std::uint16_t> codes(mask.labels().begin(), mask.labels().end());
    write_png(path, mask.width(), mask.height(), top > 255 ? 16 : 8, codes);
}

// ---------------------------------------------------------------------------
// JSON mapping

namespace {

json point_json(Point2 p) { return json::array({p.x, p.y}); }

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key))
        fail(ErrorKind::Parse, std::string("missing field `") + key + "`");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(ErrorKind::Parse, std::string("field `") + key + "` has the wrong type");
    }
}

std::pair<double, double> real_pair(const json& j, const char* key) {
    auto v = field<std::vector<double>>(j, key);
    if (v.size() != 2)
        fail(ErrorKind::Parse, std::string("field `") + key + "` must hold two numbers");
    return {v[0], v[1]};
}

Point2 point_field(const json& j, const char* key) {
    auto [x, y] = real_pair(j, key);
    if (!std::isfinite(x) || !std::isfinite(y))
        fail(ErrorKind::Parse, std::string("field `") + key + "` is not finite");
    return {x, y};
}

SliceLevel level_field(const json& j, const char* key) {
    auto s = field<std::string>(j, key);
    auto level = slice_level_from_string(s);
    if (!level)
        fail(ErrorKind::Parse, "unknown slice level \"" + s + "\"");
    return *level;
}

json spec_json(const ScarSpec& s) {
    return {{"location", s.location.token()},
            {"extent", std::string(to_string(s.extent))},
            {"level", std::string(to_string(s.level))}};
}

ScarSpec spec_from_json(const json& j) {
    ScarSpec s;
    auto token = field<std::string>(j, "location");
    auto loc = WallLocation::from_token(token);
    if (!loc)
        fail(ErrorKind::Parse, "unknown wall location \"" + token + "\"");
    s.location = *loc;
    auto ext = field<std::string>(j, "extent");
    auto e = extent_from_string(ext);
    if (!e)
        fail(ErrorKind::Parse, "unknown extent \"" + ext + "\"");
    s.extent = *e;
    s.level = level_field(j, "level");
    return s;
}

json params_json(const ScarParams& p) {
    return {{"center", point_json(p.center)}, {"radii", json::array({p.r1, p.r2})},
            {"alpha", p.alpha},              {"sigma", p.sigma},
            {"gamma", p.gamma},              {"thickness", p.thickness},
            {"seed", p.seed}};
}

ScarParams params_from_json(const json& j) {
    ScarParams p;
    p.center = point_field(j, "center");
    std::tie(p.r1, p.r2) = real_pair(j, "radii");
    p.alpha = field<double>(j, "alpha");
    p.sigma = field<double>(j, "sigma");
    p.gamma = field<double>(j, "gamma");
    p.thickness = field<double>(j, "thickness");
    p.seed = field<std::uint64_t>(j, "seed");
    return p;
}

} // namespace

json to_json(const DatasetRecord& r) {
    return {{"image_path", r.image_path},
            {"myo_mask_path", r.myo_mask_path},
            {"rvip_anterior", point_json(r.rvip_anterior)},
            {"rvip_inferior", point_json(r.rvip_inferior)},
            {"spacing_mm", json::array({r.spacing_mm.x, r.spacing_mm.y})},
            {"slice_level", std::string(to_string(r.slice_level))},
            {"lge_negative", r.lge_negative},
            {"patient_id", r.patient_id}};
}

DatasetRecord dataset_record_from_json(const json& j) {
    if (!j.is_object())
        fail(ErrorKind::Parse, "record is not a JSON object");
    DatasetRecord r;
    r.image_path = field<std::string>(j, "image_path");
    r.myo_mask_path = field<std::string>(j, "myo_mask_path");
    r.rvip_anterior = point_field(j, "rvip_anterior");
    r.rvip_inferior = point_field(j, "rvip_inferior");
    auto [sx, sy] = real_pair(j, "spacing_mm");
    if (!(sx > 0.0) || !(sy > 0.0))
        fail(ErrorKind::Parse, "spacing_mm must be positive");
    r.spacing_mm = {sx, sy};
    r.slice_level = level_field(j, "slice_level");
    r.lge_negative = field<bool>(j, "lge_negative");
    r.patient_id = field<std::string>(j, "patient_id");
    return r;
}

json to_json(const AugmentedRecord& r) {
    json j = {{"record_index", r.record_index},
              {"output_image_path", r.output_image_path},
              {"myo_mask_path", r.myo_mask_path},
              {"caption", r.caption},
              {"label", std::string(to_string(r.label))},
              {"synthetic", r.synthetic},
              {"rvip_anterior", point_json(r.rvips.anterior)},
              {"rvip_inferior", point_json(r.rvips.inferior)},
              {"source", to_json(r.source)}};
    if (r.scar_field_path)
        j["scar_field_path"] = *r.scar_field_path;
    if (r.provenance) {
        const auto& p = *r.provenance;
        j["provenance"] = {{"spec", spec_json(p.scar.spec)},
                           {"params", params_json(p.scar.params)},
                           {"gate_draw", p.scar.gate_draw},
                           {"record_seed", p.scar.record_seed},
                           {"config_digest", p.config_digest},
                           {"radius_floor_px", kRadiusFloorPx},
                           {"published_radius_floor", kPublishedRadiusFloor}};
    }
    return j;
}

AugmentedRecord augmented_record_from_json(const json& j) {
    if (!j.is_object())
        fail(ErrorKind::Parse, "record is not a JSON object");
    AugmentedRecord r;
    r.record_index = field<std::uint64_t>(j, "record_index");
    r.output_image_path = field<std::string>(j, "output_image_path");
    r.myo_mask_path = field<std::string>(j, "myo_mask_path");
    r.caption = field<std::string>(j, "caption");
    auto label = field<std::string>(j, "label");
    auto parsed = class_label_from_string(label);
    if (!parsed)
        fail(ErrorKind::Parse, "unknown label \"" + label + "\"");
    r.label = *parsed;
    r.synthetic = field<bool>(j, "synthetic");
    r.rvips = {point_field(j, "rvip_anterior"), point_field(j, "rvip_inferior")};
    r.source = dataset_record_from_json(field<json>(j, "source"));
    if (j.contains("scar_field_path"))
        r.scar_field_path = field<std::string>(j, "scar_field_path");
    if (j.contains("provenance")) {
        const json& p = j.at("provenance");
        ProvenanceRecord pr;
        pr.scar.spec = spec_from_json(field<json>(p, "spec"));
        pr.scar.params = params_from_json(field<json>(p, "params"));
        pr.scar.gate_draw = field<double>(p, "gate_draw");
        pr.scar.record_seed = field<std::uint64_t>(p, "record_seed");
        pr.config_digest = field<std::string>(p, "config_digest");
        r.provenance = std::move(pr);
    }
    return r;
}

json to_json(const SynthConfig& cfg) {
    json rho = json::object();
    for (Extent e : kAllExtents)
        rho[std::string(to_string(e))] = json::array({cfg.rho_for(e).min, cfg.rho_for(e).max});
    return {{"lambda", cfg.lambda}, {"rho", rho},  {"s1", cfg.s1},
            {"s2", cfg.s2},         {"b1", cfg.b1}, {"b2", cfg.b2},
            {"seed", cfg.master_seed}};
}

// ---------------------------------------------------------------------------
// Manifests

namespace {

template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Io, "cannot open manifest " + path.string());
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            fail(ErrorKind::Parse, path.string() + ":" + std::to_string(number) +
                                       ": malformed JSON: " + e.what());
        }
        try {
            fn(j, number);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Io)
                fail(e.kind(), path.string() + ":" + std::to_string(number) + ": " + e.what());
            throw;
        }
    }
}

std::string resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    if (path.is_relative())
        path = base / path;
    return path.lexically_normal().string();
}

} // namespace

std::vector<DatasetRecord> read_manifest(const fs::path& path) {
    const fs::path base = fs::absolute(path).parent_path();
    std::vector<DatasetRecord> records;
    for_each_line(path, [&](const json& j, std::size_t) {
        DatasetRecord r = dataset_record_from_json(j);
        r.image_path = resolve(base, r.image_path);
        r.myo_mask_path = resolve(base, r.myo_mask_path);
        for (const auto& p : {r.image_path, r.myo_mask_path})
            if (!fs::exists(p))
                fail(ErrorKind::Io, "referenced file not found: " + p);
        records.push_back(std::move(r));
    });
    return records;
}

void write_manifest(const std::vector<DatasetRecord>& records, const fs::path& path) {
    std::string text;
    for (const auto& r : records)
        text += to_json(r).dump() + "\n";
    write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<AugmentedRecord> read_augmented_manifest(const fs::path& path) {
    std::vector<AugmentedRecord> records;
    for_each_line(path, [&](const json& j, std::size_t) {
        records.push_back(augmented_record_from_json(j));
    });
    return records;
}

fs::path write_augmented(const std::vector<AugmentedRecord>& records, const fs::path& out_dir) {
    std::string text;
    for (const auto& r : records)
        text += to_json(r).dump() + "\n";
    const fs::path path = out_dir / kAugmentedManifestName;
    write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    return path;
}

// ---------------------------------------------------------------------------
// Hashing

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1)
            fail(ErrorKind::Io, "SHA-256 initialisation failed");
    }
    ~Sha256() { EVP_MD_CTX_free(ctx_); }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(std::span<const std::uint8_t> bytes) {
        EVP_DigestUpdate(ctx_, bytes.data(), bytes.size());
    }

    std::string hex() {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx_, digest, &len);
        std::ostringstream os;
        for (unsigned int i = 0; i < len; ++i)
            os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
        return os.str();
    }

private:
    EVP_MD_CTX* ctx_;
};

} // namespace

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
    Sha256 h;
    h.update(bytes);
    return h.hex();
}

std::string sha256_hex(std::string_view text) {
    return sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string config_digest(const SynthConfig& cfg) {
    return sha256_hex(to_json(cfg).dump()).substr(0, 16);
}

std::string dataset_hash(const fs::path& out_dir) {
    const fs::path manifest = out_dir / kAugmentedManifestName;
    Sha256 h;
    h.update(read_file_bytes(manifest));
    for (const auto& r : read_augmented_manifest(manifest)) {
        h.update(read_file_bytes(out_dir / r.output_image_path));
        h.update(read_file_bytes(out_dir / r.myo_mask_path));
        if (r.scar_field_path)
            h.update(read_file_bytes(out_dir / *r.scar_field_path));
    }
    return h.hex();
}

} // namespace scarforge
