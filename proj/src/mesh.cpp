#include "tiltbend/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "tiltbend/errors.hpp"
#include "tiltbend/reduce.hpp"

namespace tiltbend {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
        h ^= (v >> (8 * b)) & 0xffULL;
        h *= kFnvPrime;
    }
}

std::uint64_t edge_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

/// Icosahedron with outward counterclockwise faces, scaled to `radius`.
TriMesh icosahedron(double radius) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    TriMesh m;
    m.vertices = {{-1, t, 0},  {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                  {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (auto& v : m.vertices) v = radius * normalized(v);
    m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
               {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
               {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    return m;
}

/// One 4-to-1 subdivision with midpoints projected back to the sphere.
TriMesh subdivide_project(const TriMesh& m, double radius) {
    TriMesh out;
    out.vertices = m.vertices;
    out.faces.reserve(4 * m.faces.size());
    std::map<std::pair<int, int>, int> midpoint;
    const auto mid = [&](int a, int b) {
        const auto key = std::minmax(a, b);
        const auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        const Vec3 p = radius * normalized(0.5 * (out.vertices[a] + out.vertices[b]));
        const int idx = static_cast<int>(out.vertices.size());
        out.vertices.push_back(p);
        midpoint.emplace(key, idx);
        return idx;
    };
    for (const auto& f : m.faces) {
        const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
        out.faces.push_back({f[0], ab, ca});
        out.faces.push_back({f[1], bc, ab});
        out.faces.push_back({f[2], ca, bc});
        out.faces.push_back({ab, bc, ca});
    }
    return out;
}

}  // namespace

TriMesh make_sphere(double radius, int level) {
    if (radius <= 0.0) throw ParseError("make_sphere: radius must be positive");
    if (level < 0 || level > 9) throw ParseError("make_sphere: level out of range [0, 9]");
    TriMesh m = icosahedron(radius);
    for (int i = 0; i < level; ++i) m = subdivide_project(m, radius);
    m.tag.kind = AnalyticTag::Kind::sphere;
    m.tag.radius = radius;
    m.tag.level = level;
    validate(m);
    return m;
}

TriMesh make_torus(double major_radius, double minor_radius, int nu, int nv) {
    if (!(major_radius > minor_radius && minor_radius > 0.0))
        throw ParseError("make_torus: need major_radius > minor_radius > 0");
    if (nu < 3 || nv < 3 || nu > 4096 || nv > 4096)
        throw ParseError("make_torus: grid resolution out of range [3, 4096]");
    TriMesh m;
    m.vertices.reserve(static_cast<std::size_t>(nu) * nv);
    const double tau = 2.0 * std::numbers::pi;
    for (int i = 0; i < nu; ++i) {
        const double u = tau * i / nu;
        for (int j = 0; j < nv; ++j) {
            const double v = tau * j / nv;
            const double ring = major_radius + minor_radius * std::cos(v);
            m.vertices.push_back(
                {ring * std::cos(u), ring * std::sin(u), minor_radius * std::sin(v)});
        }
    }
    const auto vid = [&](int i, int j) { return (i % nu) * nv + (j % nv); };
    m.faces.reserve(2u * nu * nv);
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            m.faces.push_back({a, b, c});
            m.faces.push_back({a, c, d});
        }
    m.tag.kind = AnalyticTag::Kind::torus;
    m.tag.major_radius = major_radius;
    m.tag.minor_radius = minor_radius;
    m.tag.nu = nu;
    m.tag.nv = nv;
    validate(m);
    return m;
}

TriMesh refine(const TriMesh& mesh) {
    switch (mesh.tag.kind) {
        case AnalyticTag::Kind::sphere:
            return make_sphere(mesh.tag.radius, mesh.tag.level + 1);
        case AnalyticTag::Kind::torus:
            return make_torus(mesh.tag.major_radius, mesh.tag.minor_radius, 2 * mesh.tag.nu,
                              2 * mesh.tag.nv);
        case AnalyticTag::Kind::none:
            break;
    }
    throw MeshError("refine: mesh carries no analytic tag; cannot resample exactly");
}

void validate(const TriMesh& mesh, bool require_closed) {
    const int nv = static_cast<int>(mesh.vertices.size());
    if (nv < 3 || mesh.faces.empty()) throw MeshError("validate: mesh is empty");

    double area_sum = 0.0;
    std::vector<double> areas(mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            if (t[k] < 0 || t[k] >= nv)
                throw MeshError("validate: face " + std::to_string(f) +
                                " references missing vertex " + std::to_string(t[k]));
        }
        if (t[0] == t[1] || t[1] == t[2] || t[2] == t[0])
            throw MeshError("validate: face " + std::to_string(f) + " repeats a vertex");
        const Vec3 n = cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                             mesh.vertices[t[2]] - mesh.vertices[t[0]]);
        areas[f] = 0.5 * norm(n);
        area_sum += areas[f];
    }
    const double mean_area = area_sum / static_cast<double>(mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f)
        if (areas[f] <= 1e-12 * mean_area)
            throw MeshError("validate: face " + std::to_string(f) + " is degenerate");

    std::unordered_map<std::uint64_t, int> directed;
    directed.reserve(3 * mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            const int a = t[k], b = t[(k + 1) % 3];
            if (++directed[edge_key(a, b)] > 1)
                throw MeshError("validate: edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                ") traversed twice in the same direction; a neighbor of face " +
                                std::to_string(f) + " has flipped orientation");
        }
    }
    if (require_closed) {
        for (const auto& [key, count] : directed) {
            const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffULL);
            if (directed.find(edge_key(b, a)) == directed.end())
                throw MeshError("validate: boundary edge (" + std::to_string(a) + ", " +
                                std::to_string(b) + ") on a mesh required to be closed");
        }
        if (signed_volume(mesh) <= 0.0)
            throw MeshError("validate: enclosed volume is not positive; orientation is inward");
    }
}

FaceFrame face_frame(const TriMesh& mesh, std::size_t f) {
    const auto& t = mesh.faces[f];
    const Vec3 p0 = mesh.vertices[t[0]], p1 = mesh.vertices[t[1]], p2 = mesh.vertices[t[2]];
    FaceFrame fr;
    const Vec3 n = cross(p1 - p0, p2 - p0);
    fr.area = 0.5 * norm(n);
    fr.nu = normalized(n);
    fr.t1 = normalized(p1 - p0);
    fr.t2 = cross(fr.nu, fr.t1);
    fr.centroid = (p0 + p1 + p2) / 3.0;
    return fr;
}

std::vector<FaceFrame> face_frames(const TriMesh& mesh) {
    std::vector<FaceFrame> frames(mesh.faces.size());
    parallel_for(mesh.faces.size(), 0, [&](std::size_t f) { frames[f] = face_frame(mesh, f); });
    return frames;
}

double total_area(const TriMesh& mesh) {
    std::vector<double> a(mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& t = mesh.faces[f];
        a[f] = 0.5 * norm(cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                                mesh.vertices[t[2]] - mesh.vertices[t[0]]));
    }
    return pairwise_sum(a);
}

double signed_volume(const TriMesh& mesh) {
    std::vector<double> v(mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& t = mesh.faces[f];
        v[f] = dot(mesh.vertices[t[0]], cross(mesh.vertices[t[1]], mesh.vertices[t[2]])) / 6.0;
    }
    return pairwise_sum(v);
}

int euler_characteristic(const TriMesh& mesh) {
    std::unordered_map<std::uint64_t, int> undirected;
    undirected.reserve(3 * mesh.faces.size());
    for (const auto& t : mesh.faces)
        for (int k = 0; k < 3; ++k) {
            const auto [lo, hi] = std::minmax(t[k], t[(k + 1) % 3]);
            ++undirected[edge_key(lo, hi)];
        }
    return static_cast<int>(mesh.vertices.size()) - static_cast<int>(undirected.size()) +
           static_cast<int>(mesh.faces.size());
}

std::vector<Vec3> vertex_normals(const TriMesh& mesh) {
    std::vector<Vec3> acc(mesh.vertices.size());
    for (const auto& t : mesh.faces) {
        const Vec3 p[3] = {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]};
        const Vec3 n = normalized(cross(p[1] - p[0], p[2] - p[0]));
        for (int k = 0; k < 3; ++k) {
            const Vec3 e1 = normalized(p[(k + 1) % 3] - p[k]);
            const Vec3 e2 = normalized(p[(k + 2) % 3] - p[k]);
            const double angle = std::acos(std::clamp(dot(e1, e2), -1.0, 1.0));
            acc[t[k]] = acc[t[k]] + angle * n;
        }
    }
    for (auto& v : acc) v = normalized(v);
    return acc;
}

namespace {

std::string tag_sidecar_path(const std::string& path) { return path + ".json"; }

void save_tag(const AnalyticTag& tag, const std::string& path) {
    if (tag.kind == AnalyticTag::Kind::none) return;
    nlohmann::json j;
    j["schema"] = "analytic_tag";
    j["version"] = 1;
    if (tag.kind == AnalyticTag::Kind::sphere) {
        j["kind"] = "sphere";
        j["radius"] = tag.radius;
        j["level"] = tag.level;
    } else {
        j["kind"] = "torus";
        j["major_radius"] = tag.major_radius;
        j["minor_radius"] = tag.minor_radius;
        j["nu"] = tag.nu;
        j["nv"] = tag.nv;
    }
    std::ofstream out(tag_sidecar_path(path));
    if (!out) throw ParseError("cannot write analytic tag sidecar: " + tag_sidecar_path(path));
    out << j.dump(2) << "\n";
}

AnalyticTag load_tag(const std::string& path) {
    AnalyticTag tag;
    std::ifstream in(tag_sidecar_path(path));
    if (!in) return tag;
    nlohmann::json j;
    try {
        in >> j;
        if (j.value("schema", "") != "analytic_tag" || j.value("version", 0) != 1)
            throw ParseError("analytic tag sidecar has unknown schema: " + tag_sidecar_path(path));
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "sphere") {
            tag.kind = AnalyticTag::Kind::sphere;
            tag.radius = j.at("radius").get<double>();
            tag.level = j.at("level").get<int>();
        } else if (kind == "torus") {
            tag.kind = AnalyticTag::Kind::torus;
            tag.major_radius = j.at("major_radius").get<double>();
            tag.minor_radius = j.at("minor_radius").get<double>();
            tag.nu = j.at("nu").get<int>();
            tag.nv = j.at("nv").get<int>();
        } else {
            throw ParseError("analytic tag sidecar has unknown kind '" + kind + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed analytic tag sidecar " + tag_sidecar_path(path) + ": " +
                         e.what());
    }
    return tag;
}

}  // namespace

void save_off(const TriMesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    std::unordered_map<std::uint64_t, int> undirected;
    for (const auto& t : mesh.faces)
        for (int k = 0; k < 3; ++k) {
            const auto [lo, hi] = std::minmax(t[k], t[(k + 1) % 3]);
            ++undirected[edge_key(lo, hi)];
        }
    out << "OFF\n"
        << mesh.vertices.size() << ' ' << mesh.faces.size() << ' ' << undirected.size() << '\n';
    char buf[96];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
        out << buf;
    }
    for (const auto& t : mesh.faces) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    if (!out) throw ParseError("write failed: " + path);
    out.close();
    save_tag(mesh.tag, path);
}

namespace {

struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize_off(std::istream& in) {
    std::vector<Token> tokens;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back({tok, line_no});
    }
    return tokens;
}

long parse_long(const Token& t, const std::string& what) {
    char* end = nullptr;
    const long v = std::strtol(t.text.c_str(), &end, 10);
    if (end == nullptr || *end != '\0')
        throw ParseError("line " + std::to_string(t.line) + ": expected " + what + ", got '" +
                         t.text + "'");
    return v;
}

double parse_double(const Token& t) {
    char* end = nullptr;
    const double v = std::strtod(t.text.c_str(), &end);
    if (end == nullptr || *end != '\0')
        throw ParseError("line " + std::to_string(t.line) + ": expected a number, got '" + t.text +
                         "'");
    return v;
}

}  // namespace

TriMesh load_off(const std::string& path, bool require_closed) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    const std::vector<Token> tok = tokenize_off(in);
    std::size_t pos = 0;
    const auto next = [&]() -> const Token& {
        if (pos >= tok.size()) throw ParseError(path + ": unexpected end of file");
        return tok[pos++];
    };

    const Token& header = next();
    if (header.text != "OFF")
        throw ParseError(path + ": line " + std::to_string(header.line) +
                         ": expected OFF header, got '" + header.text + "'");
    const long nv = parse_long(next(), "vertex count");
    const long nf = parse_long(next(), "face count");
    parse_long(next(), "edge count");  // informational in the format; ignored
    if (nv < 0 || nf < 0 || nv > 50'000'000 || nf > 100'000'000)
        throw ParseError(path + ": implausible element counts");

    TriMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        const double x = parse_double(next());
        const double y = parse_double(next());
        const double z = parse_double(next());
        mesh.vertices.push_back({x, y, z});
    }
    mesh.faces.reserve(static_cast<std::size_t>(nf));
    for (long i = 0; i < nf; ++i) {
        const Token& cnt = next();
        if (parse_long(cnt, "face vertex count") != 3)
            throw ParseError(path + ": line " + std::to_string(cnt.line) +
                             ": only triangle faces are supported");
        const int a = static_cast<int>(parse_long(next(), "vertex index"));
        const int b = static_cast<int>(parse_long(next(), "vertex index"));
        const int c = static_cast<int>(parse_long(next(), "vertex index"));
        mesh.faces.push_back({a, b, c});
    }
    if (pos != tok.size())
        throw ParseError(path + ": line " + std::to_string(tok[pos].line) +
                         ": trailing content after the last face");

    mesh.tag = load_tag(path);
    validate(mesh, require_closed);
    return mesh;
}

std::uint64_t mesh_hash(const TriMesh& mesh) {
    std::uint64_t h = kFnvOffset;
    fnv_mix(h, mesh.vertices.size());
    fnv_mix(h, mesh.faces.size());
    for (const auto& v : mesh.vertices)
        for (int k = 0; k < 3; ++k) {
            std::uint64_t bits;
            static_assert(sizeof bits == sizeof(double));
            std::memcpy(&bits, &v.c[static_cast<std::size_t>(k)], sizeof bits);
            fnv_mix(h, bits);
        }
    for (const auto& t : mesh.faces)
        for (int k = 0; k < 3; ++k) fnv_mix(h, static_cast<std::uint64_t>(t[k]));
    return h;
}

}  // namespace tiltbend
