#include "typdiv/pca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>

#include "typdiv/error.hpp"
#include "typdiv/svg.hpp"

namespace typdiv::pca {

namespace {

// Imputed, centered data matrix over the projection's used dims.
Eigen::MatrixXd imputed_centered(const vectors::VectorSet& vs,
                                 const std::vector<Eigen::Index>& used_dims,
                                 const Eigen::VectorXd& means) {
    const auto n = vs.language_count();
    const auto d = static_cast<Eigen::Index>(used_dims.size());
    Eigen::MatrixXd x(n, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        const Eigen::Index src = used_dims[static_cast<std::size_t>(c)];
        for (Eigen::Index r = 0; r < n; ++r) {
            const double v = vs.defined()(r, src) ? vs.values()(r, src) : means(c);
            x(r, c) = v - means(c);
        }
    }
    return x;
}

void fix_signs(Eigen::MatrixXd& components) {
    for (Eigen::Index c = 0; c < components.cols(); ++c) {
        Eigen::Index argmax = 0;
        components.col(c).cwiseAbs().maxCoeff(&argmax);
        if (components(argmax, c) < 0.0) components.col(c) = -components.col(c);
    }
}

} // namespace

Projection fit(const vectors::VectorSet& vs, Eigen::Index k) {
    if (k < 1) throw UsageError("component count must be at least 1");
    if (k > vs.dim_count())
        throw UsageError("component count exceeds the number of dimensions");
    if (vs.language_count() < k + 1)
        throw UsageError("need at least k+1 languages to fit " + std::to_string(k) +
                         " components");

    Projection p;
    p.input_dims = vs.dims();
    p.languages = vs.languages();

    // Keep dims with at least one defined entry; impute with the mean.
    std::vector<double> means;
    for (Eigen::Index c = 0; c < vs.dim_count(); ++c) {
        const auto defined = vs.defined().col(c);
        const auto count = defined.count();
        if (count == 0) {
            p.dropped_dims.push_back(vs.dims()[static_cast<std::size_t>(c)]);
            p.warnings.push_back("dimension '" + vs.dims()[static_cast<std::size_t>(c)] +
                                 "' has no defined entries; dropped");
            continue;
        }
        const double mean =
            defined.select(vs.values().col(c).array(), 0.0).sum() / static_cast<double>(count);
        p.used_dims.push_back(c);
        means.push_back(mean);
    }
    const auto d = static_cast<Eigen::Index>(p.used_dims.size());
    if (d == 0) throw DataError("all dimensions are undefined; nothing to fit");
    if (k > d) {
        p.warnings.push_back("component count reduced to " + std::to_string(d) +
                             " usable dimensions");
        k = d;
    }
    p.imputation_mean = Eigen::Map<Eigen::VectorXd>(means.data(), d);

    const Eigen::MatrixXd x = imputed_centered(vs, p.used_dims, p.imputation_mean);
    const auto n = x.rows();
    const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);
    p.total_variance = cov.trace();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw DataError("eigendecomposition failed");

    // Ascending eigenvalues; clamp the tiny negatives that centering noise produces.
    Eigen::VectorXd eigenvalues = solver.eigenvalues().cwiseMax(0.0);
    const double lambda_max = eigenvalues(d - 1);
    const double rank_tol = lambda_max * 1e-12;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < d; ++i)
        if (eigenvalues(i) > rank_tol) ++rank;
    if (rank < 1) rank = 1;
    if (k > rank) {
        p.warnings.push_back("component count reduced from " + std::to_string(k) + " to " +
                             std::to_string(rank) + " (effective rank)");
        k = rank;
    }

    p.components.resize(d, k);
    p.explained_variance_ratio.resize(k);
    for (Eigen::Index c = 0; c < k; ++c) {
        const Eigen::Index src = d - 1 - c;  // largest first
        p.components.col(c) = solver.eigenvectors().col(src);
        p.explained_variance_ratio(c) =
            p.total_variance > 0.0 ? eigenvalues(src) / p.total_variance : 0.0;
    }
    fix_signs(p.components);
    p.points = x * p.components;
    return p;
}

Eigen::MatrixXd project(const Projection& p, const vectors::VectorSet& vs) {
    if (vs.dims() != p.input_dims)
        throw std::invalid_argument("project: vector set dims do not match the fitted dims");
    const Eigen::MatrixXd x = imputed_centered(vs, p.used_dims, p.imputation_mean);
    return x * p.components;
}

std::string render_scatter_svg(const Projection& p, const LanguageSample& highlight,
                               const ScatterOptions& options) {
    if (p.points.rows() == 0) throw DataError("no points to render");
    if (p.points.cols() < 2) throw UsageError("scatter plot needs at least 2 components");
    {
        std::set<std::string> seen;
        for (const auto& id : highlight.ids)
            if (!seen.insert(id).second)
                throw SampleError("duplicate language id in highlight sample: " + id);
    }

    const double margin = 48.0;
    const double plot_w = options.width - 2 * margin;
    const double plot_h = options.height - 2 * margin;

    double xmin = p.points.col(0).minCoeff(), xmax = p.points.col(0).maxCoeff();
    double ymin = p.points.col(1).minCoeff(), ymax = p.points.col(1).maxCoeff();
    const double xpad = (xmax - xmin) > 0 ? 0.05 * (xmax - xmin) : 1.0;
    const double ypad = (ymax - ymin) > 0 ? 0.05 * (ymax - ymin) : 1.0;
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    auto sx = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * plot_w; };
    auto sy = [&](double v) { return margin + plot_h - (v - ymin) / (ymax - ymin) * plot_h; };

    svg::Document doc(options.width, options.height);
    if (!options.title.empty())
        doc.text(options.width / 2.0, margin / 2.0, options.title, 14, "middle");

    // axes
    doc.line(margin, margin + plot_h, margin + plot_w, margin + plot_h, "#333333");
    doc.line(margin, margin, margin, margin + plot_h, "#333333");
    char label[64];
    std::snprintf(label, sizeof(label), "PC1 (%.1f%%)", 100.0 * p.explained_variance_ratio(0));
    doc.text(margin + plot_w / 2.0, options.height - margin / 4.0, label, 12, "middle");
    std::snprintf(label, sizeof(label), "PC2 (%.1f%%)", 100.0 * p.explained_variance_ratio(1));
    doc.text(margin / 3.0, margin + plot_h / 2.0, label, 12, "middle");

    std::set<std::string> highlighted(highlight.ids.begin(), highlight.ids.end());
    doc.open_group("background");
    for (Eigen::Index i = 0; i < p.points.rows(); ++i) {
        if (highlighted.count(p.languages[static_cast<std::size_t>(i)])) continue;
        doc.circle(sx(p.points(i, 0)), sy(p.points(i, 1)), kBackgroundRadius, kBackgroundColor);
    }
    doc.close_group();
    if (!highlight.ids.empty()) {
        doc.open_group("highlight");
        for (Eigen::Index i = 0; i < p.points.rows(); ++i) {
            if (!highlighted.count(p.languages[static_cast<std::size_t>(i)])) continue;
            doc.circle(sx(p.points(i, 0)), sy(p.points(i, 1)), kHighlightRadius, kHighlightColor);
        }
        doc.close_group();
    }
    return doc.str();
}

void render_scatter(const Projection& p, const LanguageSample& highlight,
                    const std::filesystem::path& out, const ScatterOptions& options) {
    svg::write_file(out, render_scatter_svg(p, highlight, options));
}

} // namespace typdiv::pca
