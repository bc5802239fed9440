#include "lra/corpus.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "lra/errors.hpp"

namespace lra {

namespace {

double parse_double(std::string_view token, std::size_t line_no) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw data_error("annotations: unparsable coordinate '" + std::string(token) + "' on line " +
                         std::to_string(line_no));
    }
    return value;
}

std::vector<Contour> load_polylines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("annotations: cannot open '" + path + "'");

    std::vector<Contour> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<double> values;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) comma = line.size();
            std::string_view token(line.data() + start, comma - start);
            while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
            while (!token.empty() && (token.back() == ' ' || token.back() == '\t')) token.remove_suffix(1);
            if (!token.empty()) values.push_back(parse_double(token, line_no));
            if (comma == line.size()) break;
            start = comma + 1;
        }
        if (values.empty()) continue;
        if (values.size() % 2 != 0) {
            throw data_error("annotations: odd coordinate count on line " + std::to_string(line_no));
        }
        if (values.size() < 2 * min_contour_vertices) {
            throw data_error("annotations: fewer than 4 vertices on line " + std::to_string(line_no));
        }
        Contour c;
        for (std::size_t i = 0; i + 1 < values.size(); i += 2) {
            c.vertices.push_back({values[i], values[i + 1]});
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Contour> load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("annotations: cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw data_error("annotations: invalid JSON in '" + path + "': " + e.what());
    }
    if (!doc.contains("contours") || !doc["contours"].is_array()) {
        throw data_error("annotations: missing 'contours' array in '" + path + "'");
    }
    std::vector<Contour> out;
    std::size_t index = 0;
    for (const auto& record : doc["contours"]) {
        ++index;
        if (!record.is_array() || record.size() < min_contour_vertices) {
            throw data_error("annotations: record " + std::to_string(index) +
                             " needs at least 4 [x,y] pairs");
        }
        Contour c;
        for (const auto& pt : record) {
            if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
                throw data_error("annotations: record " + std::to_string(index) +
                                 " has a malformed vertex");
            }
            c.vertices.push_back({pt[0].get<double>(), pt[1].get<double>()});
        }
        out.push_back(std::move(c));
    }
    return out;
}

// splitmix64; fixed stream so synthetic corpora are byte-identical per seed
struct SynthRng {
    std::uint64_t state;

    explicit SynthRng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

constexpr std::size_t side_points = 7;  // per side, CTW1500-style 14-gon

}  // namespace

std::vector<Contour> load_raw_annotations(const std::string& path, AnnotationFormat format) {
    std::vector<Contour> raw =
        format == AnnotationFormat::PolyLines ? load_polylines(path) : load_json(path);
    if (raw.empty()) throw data_error("annotations: '" + path + "' contains no contours");
    return raw;
}

Corpus build_corpus(const std::vector<Contour>& raw, std::size_t n_vertices, OriginPolicy policy,
                    CorpusSource source) {
    if (raw.empty()) throw data_error("corpus: no contours");
    Corpus corpus;
    corpus.source = source;
    corpus.n_vertices = n_vertices;
    corpus.contours.reserve(raw.size());
    for (const Contour& c : raw) {
        corpus.contours.push_back(resample(canonicalize(c, policy), n_vertices));
    }
    return corpus;
}

Corpus load_annotations(const std::string& path, AnnotationFormat format, std::size_t n_vertices,
                        OriginPolicy policy) {
    return build_corpus(load_raw_annotations(path, format), n_vertices, policy, CorpusSource::File);
}

std::vector<Contour> synthesize_annotations(const SynthParams& params) {
    if (params.aspect_ratio_range.first <= 0.0 ||
        params.aspect_ratio_range.second < params.aspect_ratio_range.first) {
        throw argument_error("synthesize: aspect ratio range is empty");
    }
    if (params.curvature_range < 0.0 || params.rotation_range < 0.0) {
        throw argument_error("synthesize: ranges must be nonnegative");
    }

    SynthRng rng(params.seed);
    std::vector<Contour> out;
    out.reserve(params.count);

    for (std::size_t idx = 0; idx < params.count; ++idx) {
        const double aspect = rng.uniform(params.aspect_ratio_range.first, params.aspect_ratio_range.second);
        const double height = rng.uniform(24.0, 96.0);
        const double length = aspect * height;
        const double bend = rng.uniform(-params.curvature_range, params.curvature_range);

        std::vector<double> amp(params.wave_harmonics), phase(params.wave_harmonics);
        for (std::size_t h = 0; h < params.wave_harmonics; ++h) {
            amp[h] = params.curvature_range * rng.uniform(0.0, 0.35 / static_cast<double>(h + 1));
            phase[h] = rng.uniform(0.0, 2.0 * M_PI);
        }
        const double rotation = rng.uniform(-params.rotation_range, params.rotation_range);
        const Vec2 offset{rng.uniform(-200.0, 200.0), rng.uniform(-200.0, 200.0)};

        auto heading = [&](double u) {
            double th = bend * (u - 0.5);
            for (std::size_t h = 0; h < params.wave_harmonics; ++h) {
                th += amp[h] * std::sin(2.0 * M_PI * static_cast<double>(h + 1) * u + phase[h]);
            }
            return th;
        };

        // constant-speed spine: integrate the unit heading field
        constexpr std::size_t fine = 600;
        std::vector<Vec2> spine(fine + 1);
        spine[0] = {0.0, 0.0};
        for (std::size_t i = 0; i < fine; ++i) {
            const double u = (static_cast<double>(i) + 0.5) / fine;
            const double th = heading(u);
            const double step = length / fine;
            spine[i + 1] = spine[i] + Vec2{step * std::cos(th), step * std::sin(th)};
        }

        const double cr = std::cos(rotation);
        const double sr = std::sin(rotation);
        auto place = [&](double u, double side) {
            const std::size_t i = static_cast<std::size_t>(std::llround(u * fine));
            const double th = heading(u);
            const Vec2 normal{-std::sin(th), std::cos(th)};
            const Vec2 p = spine[i] + (side * height * 0.5) * normal;
            return Vec2{offset.x + cr * p.x - sr * p.y, offset.y + sr * p.x + cr * p.y};
        };

        Contour c;
        c.vertices.reserve(2 * side_points);
        for (std::size_t k = 0; k < side_points; ++k) {  // top, left to right
            c.vertices.push_back(place(static_cast<double>(k) / (side_points - 1), +1.0));
        }
        for (std::size_t k = side_points; k-- > 0;) {  // bottom, right to left
            c.vertices.push_back(place(static_cast<double>(k) / (side_points - 1), -1.0));
        }
        out.push_back(std::move(c));
    }
    return out;
}

Corpus generate_synthetic(const SynthParams& params, std::size_t n_vertices, OriginPolicy policy) {
    return build_corpus(synthesize_annotations(params), n_vertices, policy, CorpusSource::Synthetic);
}

Matrix assemble_matrix(const Corpus& c) {
    if (c.contours.empty()) throw data_error("assemble_matrix: empty corpus");
    const std::size_t n = c.n_vertices;
    for (const Contour& contour : c.contours) {
        if (contour.size() != n) {
            throw data_error("assemble_matrix: corpus contours disagree on vertex count");
        }
    }
    Matrix a(2 * n, c.contours.size());
    for (std::size_t j = 0; j < c.contours.size(); ++j) {
        const FlatContour f = flatten(c.contours[j]);
        for (std::size_t i = 0; i < 2 * n; ++i) a(i, j) = f.coords[i];
    }
    return a;
}

void save_annotations(const std::vector<Contour>& contours, const std::string& path,
                      AnnotationFormat format) {
    std::ofstream out(path);
    if (!out) throw data_error("annotations: cannot write '" + path + "'");

    auto format_double = [](double v) {
        char buf[32];
        const auto result = std::to_chars(buf, buf + sizeof(buf), v);
        return std::string(buf, result.ptr);
    };

    if (format == AnnotationFormat::PolyLines) {
        for (const Contour& c : contours) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) out << ',';
                out << format_double(c.vertices[i].x) << ',' << format_double(c.vertices[i].y);
            }
            out << '\n';
        }
    } else {
        nlohmann::json doc;
        doc["contours"] = nlohmann::json::array();
        for (const Contour& c : contours) {
            nlohmann::json record = nlohmann::json::array();
            for (const Vec2& v : c.vertices) record.push_back({v.x, v.y});
            doc["contours"].push_back(std::move(record));
        }
        out << doc.dump(2) << '\n';
    }
    if (!out) throw data_error("annotations: write to '" + path + "' failed");
}

}  // namespace lra
