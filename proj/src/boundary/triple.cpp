#include "semilab/boundary/triple.hpp"

#include <cmath>

#include <json.hpp>

#include "semilab/numeric/kernels.hpp"

namespace semilab::boundary {

namespace {
constexpr double kRowDegeneracy = 1e-12;
}

cvec BoundaryTriple::elimination_row(const cvec& row) const {
    if (row.size() != n + 1) throw DimensionMismatch("elimination_row: row size");
    double rmax = 0.0;
    for (const auto& z : row) rmax = std::max(rmax, std::abs(z));
    if (!(std::abs(row[0]) > kRowDegeneracy * rmax) || rmax == 0.0) {
        throw ConstraintEliminationFailed("constraint row has no usable boundary coefficient");
    }
    cvec l(n);
    for (std::size_t j = 0; j < n; ++j) l[j] = -row[j + 1] / row[0];
    return l;
}

cvec BoundaryTriple::lift_interior(const cvec& x, const cvec& elim) const {
    if (x.size() != n || elim.size() != n) throw DimensionMismatch("lift_interior: sizes");
    cvec full(n + 1);
    cplx f0{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) f0 += elim[j] * x[j];
    full[0] = f0;
    for (std::size_t j = 0; j < n; ++j) full[j + 1] = x[j];
    return full;
}

cvec BoundaryTriple::lift_with_boundary_data(const cvec& x, cplx u) const {
    cvec full = lift_interior(x, elimination_row(G));
    full[0] += u / G[0];
    return full;
}

cplx BoundaryTriple::apply_row(const cvec& row, const cvec& full) const {
    if (row.size() != full.size()) throw DimensionMismatch("apply_row: sizes");
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * full[j];
    return acc;
}

BoundaryTriple build_heat_triple(std::size_t n) {
    if (n < 8) throw GridTooSmall("build_heat_triple: need n >= 8");
    BoundaryTriple t;
    t.n = n;
    t.h = M_PI / static_cast<double>(n + 1);
    t.scheme = "heat-robin-fd2";
    t.grid.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) t.grid[j] = static_cast<double>(j) * t.h;

    const double ih2 = 1.0 / (t.h * t.h);
    t.Am = ComplexMatrix(n + 1, n + 1);
    for (std::size_t j = 1; j <= n; ++j) {
        t.Am(j, j) = -2.0 * ih2;
        t.Am(j, j - 1) = ih2;
        if (j + 1 <= n) t.Am(j, j + 1) = ih2;  // node n+1 (x = pi) carries f = 0
    }
    // One-sided second difference at the boundary node; completes the grid
    // operator but never enters the restricted generators.
    t.Am(0, 0) = 2.0 * ih2;
    t.Am(0, 1) = -5.0 * ih2;
    t.Am(0, 2) = 4.0 * ih2;
    t.Am(0, 3) = -1.0 * ih2;

    t.G.assign(n + 1, cplx{0.0, 0.0});
    t.G[0] = -3.0 / (2.0 * t.h);
    t.G[1] = 4.0 / (2.0 * t.h);
    t.G[2] = -1.0 / (2.0 * t.h);

    t.M.assign(n + 1, cplx{0.0, 0.0});
    t.M[0] = -1.0;

    t.P = numeric::scale(ComplexMatrix::identity(n), 0.1);
    return t;
}

namespace {

nlohmann::json cvec_to_json(const cvec& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& z : v) arr.push_back({z.real(), z.imag()});
    return arr;
}

cvec cvec_from_json(const nlohmann::json& arr) {
    cvec v;
    v.reserve(arr.size());
    for (const auto& e : arr) v.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return v;
}

} // namespace

std::string triple_to_json(const BoundaryTriple& t) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n"] = t.n;
    j["h"] = t.h;
    j["scheme"] = t.scheme;
    j["grid"] = t.grid;
    j["Am"] = {{"rows", t.Am.rows()}, {"cols", t.Am.cols()}, {"entries", cvec_to_json(t.Am.data())}};
    j["G"] = cvec_to_json(t.G);
    j["M"] = cvec_to_json(t.M);
    j["P"] = {{"rows", t.P.rows()}, {"cols", t.P.cols()}, {"entries", cvec_to_json(t.P.data())}};
    return j.dump(2);
}

BoundaryTriple triple_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    BoundaryTriple t;
    t.n = j.at("n").get<std::size_t>();
    t.h = j.at("h").get<double>();
    t.scheme = j.at("scheme").get<std::string>();
    t.grid = j.at("grid").get<rvec>();
    const auto& am = j.at("Am");
    t.Am = ComplexMatrix(am.at("rows").get<std::size_t>(), am.at("cols").get<std::size_t>(),
                         cvec_from_json(am.at("entries")));
    t.G = cvec_from_json(j.at("G"));
    t.M = cvec_from_json(j.at("M"));
    const auto& p = j.at("P");
    t.P = ComplexMatrix(p.at("rows").get<std::size_t>(), p.at("cols").get<std::size_t>(),
                        cvec_from_json(p.at("entries")));
    return t;
}

} // namespace semilab::boundary
