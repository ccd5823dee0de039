#include "qwlab/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "parallel.hpp"
#include "qwlab/error.hpp"
#include "qwlab/optimality.hpp"

namespace qwlab {

namespace {

using json = nlohmann::ordered_json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Independent transcription of the witness pattern, so the structure claim
// does not compare build_witness against itself.
constexpr std::string_view kDiagonalPattern = "abccabbca";
constexpr std::array<std::size_t, 3> kCoupledIndices = {0, 4, 8};

std::complex<double> expected_entry(const WitnessParams& p, std::size_t i, std::size_t j) {
  if (i == j) {
    switch (kDiagonalPattern[i]) {
      case 'a': return p.a;
      case 'b': return p.b;
      default: return p.c;
    }
  }
  const bool ci = std::find(kCoupledIndices.begin(), kCoupledIndices.end(), i) != kCoupledIndices.end();
  const bool cj = std::find(kCoupledIndices.begin(), kCoupledIndices.end(), j) != kCoupledIndices.end();
  return (ci && cj) ? -1.0 : 0.0;
}

int structure_mismatches(const WitnessBuilder& build, const WitnessParams& p) {
  const CMat w = build(p);
  if (w.rows() != 9 || w.cols() != 9) return 81;
  int bad = 0;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j)
      if (w(i, j) != expected_entry(p, i, j)) ++bad;
  return bad;
}

CVec gaussian_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  CVec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = Complex(g(rng), g(rng));
  return v;
}

CVec phase_vector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  return CVec{std::polar(1.0, angle(rng)), std::polar(1.0, angle(rng)), std::polar(1.0, angle(rng))};
}

double max_abs_diff(const CMat& a, const CMat& b) { return (a - b).max_abs(); }

double relative_expectation(const CMat& w, const ProductVector& pv) {
  const double scale = std::pow(norm(pv.x) * norm(pv.y), 2);
  if (scale == 0.0) return 0.0;
  return std::abs(expectation(w, pv.x, pv.y)) / scale;
}

/// Raw partial trace against its closed form over random parameters; returns
/// the largest entrywise deviation.
double wy_deviation(const WitnessBuilder& build, int samples, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> param(0.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const WitnessParams p{param(rng), param(rng), param(rng)};
    const CVec y = gaussian_vector(rng, 3);
    worst = std::max(worst, max_abs_diff(partial_trace_second(build(p), y), reduction_closed_form(p, y)));
  }
  return worst;
}

template <class Fn>
ClaimRecord guarded(std::string id, std::string anchor, Fn&& body) {
  ClaimRecord rec{std::move(id), std::move(anchor), ClaimStatus::Fail, json::object()};
  try {
    body(rec);
  } catch (const std::exception& e) {
    rec.status = ClaimStatus::Fail;
    rec.measured["error"] = e.what();
  }
  return rec;
}

ClaimStatus pass_if(bool ok) { return ok ? ClaimStatus::Pass : ClaimStatus::Fail; }

}  // namespace

std::string_view to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::Degenerate: return "degenerate";
  }
  return "fail";
}

bool VerifyReport::all_pass() const {
  return std::none_of(claims.begin(), claims.end(),
                      [](const ClaimRecord& c) { return c.status == ClaimStatus::Fail; });
}

WitnessBuilder tampered_builder(int site) {
  if (site < 0 || site >= kTamperSites)
    throw Error(ErrorCode::InvalidArgument, "tamper site must be in [0, 15)");
  return [site](const WitnessParams& p) {
    CMat w = build_witness(p);
    if (site < 9) {
      w(static_cast<std::size_t>(site), static_cast<std::size_t>(site)) *= -1.0;
      return w;
    }
    int seen = 9;
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j)
        if (i != j && w(i, j) != Complex{} && seen++ == site) {
          w(i, j) *= -1.0;
          return w;
        }
    return w;
  };
}

namespace claims {

ClaimRecord witness_structure(const WitnessBuilder& build) {
  return guarded("witness-structure",
                 "W[a,b,c] has diagonal (a,b,c|c,a,b|b,c,a), -1 at the six off-diagonal "
                 "positions among indices {1,5,9}, zeros elsewhere",
                 [&](ClaimRecord& rec) {
    const std::array<WitnessParams, 5> params = {{
        {1.0, 1.0, 0.0}, {2.0, 0.0, 0.0}, {0.5, 0.19098, 1.30902}, {0.3, 0.7, 1.9}, {0.0, 1.0, 1.0}}};
    int mismatches = 0;
    bool hermitian = true;
    for (const auto& p : params) {
      mismatches += structure_mismatches(build, p);
      const CMat w = build(p);
      hermitian = hermitian && hermitian_asymmetry(w) == 0.0;
    }

    // Every single-entry sign flip of the reference builder must be caught
    // by both the structure check and the reduction identity.
    std::mt19937_64 rng(7);
    int caught_structure = 0;
    int caught_reduction = 0;
    for (int site = 0; site < kTamperSites; ++site) {
      const WitnessBuilder mutant = tampered_builder(site);
      int m = 0;
      for (const auto& p : params) m += structure_mismatches(mutant, p);
      if (m > 0) ++caught_structure;
      if (wy_deviation(mutant, 5, rng) > 1e-12) ++caught_reduction;
    }

    rec.measured["parameter_sets"] = params.size();
    rec.measured["entry_mismatches"] = mismatches;
    rec.measured["exactly_hermitian"] = hermitian;
    rec.measured["sign_flip_mutants"] = kTamperSites;
    rec.measured["mutants_caught_by_structure"] = caught_structure;
    rec.measured["mutants_caught_by_reduction"] = caught_reduction;
    rec.status = pass_if(mismatches == 0 && hermitian && caught_structure == kTamperSites &&
                         caught_reduction == kTamperSites);
  });
}

ClaimRecord classifier_vs_seesaw(const WitnessBuilder& build, int grid, int n_starts,
                               std::uint64_t seed) {
  return guarded("classifier-vs-seesaw",
                 "W[a,b,c] is block positive iff 0<=a<2, a+b+c>=2 and (a<=1 => bc>=(1-a)^2); "
                 "classifier agrees with see-saw sign (threshold -1e-5) on >=99.9% of "
                 "non-boundary cells",
                 [&](ClaimRecord& rec) {
    struct Cell {
      WitnessParams p;
      bool witness = false;
    };
    const double step = 2.0 / (grid - 1);
    std::vector<Cell> cells;
    int in_domain = 0;
    int boundary = 0;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j)
        for (int k = 0; k < grid; ++k) {
          const WitnessParams p{i * step, j * step, k * step};
          const double sum = p.a + p.b + p.c;
          if (sum < 2.0 - 1e-12) continue;
          ++in_domain;
          const bool near_boundary =
              std::abs(sum - 2.0) <= 1e-3 || std::abs(p.a - 2.0) <= 1e-3 ||
              (p.a <= 1.0 && std::abs(p.b * p.c - (1.0 - p.a) * (1.0 - p.a)) <= 1e-3);
          if (near_boundary) {
            ++boundary;
            continue;
          }
          cells.push_back({p, satisfies_witness_conditions(p, kDefaultClassifyTol)});
        }

    const std::vector<double> minima = detail::parallel_map<double>(cells.size(), [&](std::size_t n) {
      SeesawOptions opts;
      opts.n_starts = n_starts;
      opts.seed = seed + 1000 * static_cast<std::uint64_t>(n);
      return seesaw_minimize(build(cells[n].p), opts).min_value;
    });

    int agree = 0;
    double witness_floor = 0.0;
    double nonwitness_ceiling = -1.0;
    json disagreements = json::array();
    for (std::size_t n = 0; n < cells.size(); ++n) {
      const bool block_positive = minima[n] >= -1e-5;
      if (block_positive == cells[n].witness) {
        ++agree;
      } else if (disagreements.size() < 10) {
        disagreements.push_back({{"a", cells[n].p.a}, {"b", cells[n].p.b}, {"c", cells[n].p.c},
                                 {"seesaw_min", minima[n]}, {"is_witness", cells[n].witness}});
      }
      if (cells[n].witness) witness_floor = std::min(witness_floor, minima[n]);
      else nonwitness_ceiling = std::max(nonwitness_ceiling, minima[n]);
    }
    const double fraction = cells.empty() ? 0.0 : static_cast<double>(agree) / cells.size();
    rec.measured["grid"] = grid;
    rec.measured["n_starts"] = n_starts;
    rec.measured["cells_in_domain"] = in_domain;
    rec.measured["boundary_excluded"] = boundary;
    rec.measured["cells_compared"] = cells.size();
    rec.measured["agreements"] = agree;
    rec.measured["agreement_fraction"] = fraction;
    rec.measured["witness_cells_lowest_min"] = witness_floor;
    rec.measured["nonwitness_cells_highest_min"] = nonwitness_ceiling;
    rec.measured["disagreements"] = disagreements;
    rec.status = pass_if(!cells.empty() && fraction >= 0.999);
  });
}

ClaimRecord wy_projector_form(const WitnessBuilder& build, int samples, std::uint64_t seed) {
  return guarded("Wy-projector-form",
                 "Tr_2(W (I x |y><y|)) = diag(...) - |y*><y*|; for unit-modulus y and a+b+c=2 "
                 "it has spectrum {0,3,3} with kernel conj(y)",
                 [&](ClaimRecord& rec) {
    std::mt19937_64 rng(seed);
    const double deviation = wy_deviation(build, samples, rng);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double spectrum_error = 0.0;
    double kernel_overlap_defect = 0.0;
    std::size_t worst_kernel_dim = 1;
    for (int i = 0; i < samples; ++i) {
      const double a = 2.0 * unit(rng);
      const double b = (2.0 - a) * unit(rng);
      const WitnessParams p{a, b, 2.0 - a - b};
      const CVec y = phase_vector(rng);
      const CMat wy = partial_trace_second(build(p), y);
      const Eigensystem es = hermitian_eigen(wy);
      const std::array<double, 3> expected = {0.0, 3.0, 3.0};
      for (std::size_t k = 0; k < 3; ++k)
        spectrum_error = std::max(spectrum_error, std::abs(es.values[k] - expected[k]));
      const std::vector<CVec> kernel = nullspace(wy);
      if (kernel.size() != 1) {
        worst_kernel_dim = std::max(worst_kernel_dim, kernel.size());
        kernel_overlap_defect = 1.0;
        continue;
      }
      const double overlap = std::abs(inner(kernel.front(), conj(y))) / std::sqrt(3.0);
      kernel_overlap_defect = std::max(kernel_overlap_defect, 1.0 - overlap);
    }
    rec.measured["samples"] = samples;
    rec.measured["max_raw_vs_projector_deviation"] = deviation;
    rec.measured["max_spectrum_error"] = spectrum_error;
    rec.measured["max_kernel_overlap_defect"] = kernel_overlap_defect;
    rec.measured["max_kernel_dimension"] = worst_kernel_dim;
    rec.status = pass_if(deviation <= 1e-12 && spectrum_error <= 1e-10 &&
                         kernel_overlap_defect <= 1e-10 && worst_kernel_dim == 1);
  });
}

ClaimRecord canonical_seven_rank(const WitnessBuilder& build) {
  return guarded("canonical-seven-rank",
                 "the seven phase products at (0,0,0),(0,0,pi),(0,pi,0),(0,pi,pi),(0,0,pi/2),"
                 "(0,pi/2,0),(0,pi/2,-pi/2) span exactly 7 dimensions and are zeros of every "
                 "ellipse witness",
                 [&](ClaimRecord& rec) {
    const std::vector<CVec> seven = canonical_seven();
    const int rank = gram_rank(seven);
    double worst = 0.0;
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0, 1.2, kEllipseMaxA})
      for (Branch br : {Branch::Lower, Branch::Upper}) {
        const CMat w = build(ellipse_from_a(a, br));
        for (const auto& t : canonical_triples())
          worst = std::max(worst, relative_expectation(w, phase_product(t)));
      }
    rec.measured["gram_rank"] = rank;
    rec.measured["gram_spectrum"] = gram_spectrum(seven);
    rec.measured["max_relative_expectation"] = worst;
    rec.status = pass_if(rank == 7 && worst <= 1e-10);
  });
}

ClaimRecord case1_identities(const WitnessBuilder& build, int samples, std::uint64_t seed) {
  return guarded("case1-identities",
                 "on the lower branch the y1=0 quadratic has zero discriminant; for a<=1 the "
                 "constructed y=(0,p,q e^{i phi}) makes det W_y vanish and the kernel product "
                 "vectors have zero expectation; for a>1 no y1=0 zero vector exists",
                 [&](ClaimRecord& rec) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    double max_disc = 0.0;
    double max_quadratic = 0.0;
    double max_det_factored = 0.0;
    double max_det_direct = 0.0;
    double max_expectation = 0.0;
    double inner_min_block_det = std::numeric_limits<double>::infinity();
    int outer = 0;
    int inner_arc = 0;
    int inner_rejected = 0;
    for (int i = 0; i < samples; ++i) {
      const double a = kEllipseMaxA * (i + 0.5) / samples;
      const WitnessParams p = ellipse_from_a(a, Branch::Lower);
      const double phi = angle(rng);
      max_disc = std::max(max_disc, std::abs(quadratic_discriminant(p.a, p.b)));
      const CMat w = build(p);
      if (a <= 1.0) {
        ++outer;
        const Case1Data d = case1_data(p);
        const Complex y2 = d.p;
        const Complex y3 = std::polar(d.q, phi);
        max_quadratic =
            std::max(max_quadratic, std::abs(quadratic_second_term(p.a, p.b, d.p * d.p / (4.0 - 3.0 * p.a))));
        max_det_factored = std::max(max_det_factored, std::abs(det_wy_factored(p, y2, y3)));
        max_det_direct = std::max(
            max_det_direct, std::abs(determinant(partial_trace_second(w, CVec{0.0, y2, y3}))));
        for (int k = 1; k <= 3; ++k)
          max_expectation = std::max(max_expectation, relative_expectation(w, case1_psi(p, k, phi)));
      } else {
        ++inner_arc;
        try {
          case1_data(p);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::Degenerate) ++inner_rejected;
        }
        for (int t = 0; t <= 1000; ++t) {
          const double t2 = t / 1000.0;
          inner_min_block_det = std::min(
              inner_min_block_det, det_wy_factored(p, std::sqrt(t2), std::sqrt(1.0 - t2)));
        }
      }
    }
    rec.measured["samples"] = samples;
    rec.measured["outer_arc_samples"] = outer;
    rec.measured["inner_arc_samples"] = inner_arc;
    rec.measured["max_abs_discriminant"] = max_disc;
    rec.measured["max_abs_quadratic_at_root"] = max_quadratic;
    rec.measured["max_abs_det_factored"] = max_det_factored;
    rec.measured["max_abs_det_direct"] = max_det_direct;
    rec.measured["max_relative_expectation"] = max_expectation;
    rec.measured["inner_arc_rejected_as_degenerate"] = inner_rejected;
    if (inner_arc > 0) rec.measured["inner_arc_min_y1zero_det"] = inner_min_block_det;
    const bool inner_ok = inner_arc == 0 || (inner_rejected == inner_arc && inner_min_block_det > 0.0);
    rec.status = pass_if(max_disc <= 1e-10 && max_quadratic <= 1e-10 && max_det_factored <= 1e-10 &&
                         max_det_direct <= 1e-10 && max_expectation <= 1e-10 && inner_ok);
  });
}

ClaimRecord basis_determinant(int samples, std::uint64_t seed) {
  return guarded("basis-determinant",
                 "det of the 9x9 basis (seven phase rows + two case-1 rows) equals "
                 "(-32+160i) e^{i(phi1+phi2)} [(qs)^2+(pr)^2-qs pr] for exactly one of the two "
                 "entry orderings",
                 [&](ClaimRecord& rec) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    std::uniform_real_distribution<double> a_dist(0.02, 0.98);
    double ref_err = 0.0;
    double conv_err = 0.0;
    double ref_swap_diff = 0.0;
    double min_abs_det = std::numeric_limits<double>::infinity();
    Complex conv_constant_sum{};
    double conv_constant_spread = 0.0;
    std::vector<Complex> conv_constants;
    for (int i = 0; i < samples; ++i) {
      const WitnessParams p = ellipse_from_a(a_dist(rng), Branch::Lower);
      const double phi1 = angle(rng);
      const double phi2 = angle(rng);
      const Complex kernel = basis_determinant_kernel(p, phi1, phi2);
      const Complex closed = kReferenceDeterminantConstant * kernel;
      const CMat ref = reference_basis_matrix(p, phi1, phi2);
      const Complex det_ref = determinant(ref);
      const Complex det_conv = determinant(convention_basis_matrix(p, phi1, phi2));
      CMat swapped = ref;
      std::swap(swapped(7, 5), swapped(7, 7));
      const Complex det_swapped = determinant(swapped);
      ref_err = std::max(ref_err, std::abs(det_ref - closed) / std::abs(closed));
      conv_err = std::max(conv_err, std::abs(det_conv - closed) / std::abs(closed));
      ref_swap_diff = std::max(ref_swap_diff, std::abs(det_swapped - det_ref) / std::abs(det_ref));
      min_abs_det = std::min(min_abs_det, std::abs(det_ref));
      conv_constants.push_back(det_conv / kernel);
      conv_constant_sum += det_conv / kernel;
    }
    const Complex conv_constant = conv_constant_sum / static_cast<double>(samples);
    for (const auto& z : conv_constants)
      conv_constant_spread = std::max(conv_constant_spread, std::abs(z - conv_constant));

    const WitnessParams choi = ellipse_from_a(1.0, Branch::Lower);
    const double choi_det = std::abs(determinant(reference_basis_matrix(choi, 0.3, 1.1)));

    const bool ref_pass = ref_err <= 1e-9;
    const bool conv_pass = conv_err <= 1e-9;
    rec.measured["samples"] = samples;
    rec.measured["reference_table_max_rel_error"] = ref_err;
    rec.measured["convention_max_rel_error"] = conv_err;
    rec.measured["passing_ordering"] = ref_pass && !conv_pass   ? "reference_table"
                                       : conv_pass && !ref_pass ? "convention"
                                       : ref_pass               ? "both"
                                                                : "none";
    rec.measured["convention_constant"] = {{"re", conv_constant.real()}, {"im", conv_constant.imag()}};
    rec.measured["convention_constant_spread"] = conv_constant_spread;
    rec.measured["psi_entry_swap_rel_det_change"] = ref_swap_diff;
    rec.measured["min_abs_det"] = min_abs_det;
    rec.measured["abs_det_at_b0_c1"] = choi_det;
    rec.status = pass_if(ref_pass != conv_pass && min_abs_det > 0.0 && choi_det <= 1e-12);
  });
}

ClaimRecord spanning_sweep(const WitnessBuilder& build, int samples, std::uint64_t seed) {
  return guarded("spanning-sweep",
                 "for ellipse witnesses with 0<=a<1 the zero product vectors span C^3 x C^3; at "
                 "(b,c)=(1,0),(0,1) they span only 7 dimensions",
                 [&](ClaimRecord& rec) {
    const int lower = samples / 2;
    const int upper = samples - lower;
    std::vector<WitnessParams> points;
    for (int i = 0; i < lower; ++i) points.push_back(ellipse_from_a(static_cast<double>(i) / lower, Branch::Lower));
    for (int i = 0; i < upper; ++i) points.push_back(ellipse_from_a((i + 0.5) / upper, Branch::Upper));

    int rank9 = 0;
    int min_rank = 9;
    double worst_expectation = 0.0;
    SpanOptions opts;
    opts.seed = seed;
    for (const auto& p : points) {
      const SpanReport r = spanning_report(p, opts);
      if (r.gram_rank == 9) ++rank9;
      min_rank = std::min(min_rank, r.gram_rank);
      const CMat w = build(p);
      for (const auto& v : r.vectors) {
        // Closed-form vectors are flattened products; recover the value directly.
        const Complex e = inner(v, w * v);
        worst_expectation = std::max(worst_expectation, std::abs(e) / std::norm(norm(v)));
      }
    }

    const std::vector<CVec> seven = canonical_seven();
    json choi = json::array();
    bool choi_ok = true;
    for (const WitnessParams& p : {WitnessParams{1.0, 0.0, 1.0}, WitnessParams{1.0, 1.0, 0.0}}) {
      const SpanReport r = spanning_report(p, opts);
      std::vector<CVec> with_phi = seven;
      for (std::size_t k = 7; k < r.vectors.size(); ++k) with_phi.push_back(r.vectors[k]);
      const int extended = gram_rank(with_phi);
      double phi_expectation = 0.0;
      const CMat w = build(p);
      for (std::size_t k = 7; k < r.vectors.size(); ++k)
        phi_expectation = std::max(phi_expectation, std::abs(inner(r.vectors[k], w * r.vectors[k])));
      choi.push_back({{"b", p.b}, {"c", p.c}, {"gram_rank", r.gram_rank}, {"rank_with_phi", extended},
                      {"max_phi_expectation", phi_expectation}});
      choi_ok = choi_ok && r.gram_rank == 7 && extended == 7 && !r.spanning && phi_expectation <= 1e-12;
    }

    // Informational: inner-arc points have no closed-form construction.
    json inner_arc = json::array();
    for (double a : {1.1, 1.2, 1.3}) {
      const SpanReport r = spanning_report(ellipse_from_a(a, Branch::Lower), opts);
      inner_arc.push_back({{"a", a}, {"numeric_gram_rank", r.gram_rank}});
    }

    rec.measured["samples"] = points.size();
    rec.measured["rank9_count"] = rank9;
    rec.measured["min_rank"] = min_rank;
    rec.measured["max_relative_expectation"] = worst_expectation;
    rec.measured["choi_points"] = choi;
    rec.measured["inner_arc_numeric"] = inner_arc;
    rec.status = pass_if(rank9 == static_cast<int>(points.size()) && worst_expectation <= 1e-10 && choi_ok);
  });
}

ClaimRecord case2_polynomial(const WitnessBuilder& build, int unit_samples, int det_samples,
                             std::uint64_t seed) {
  return guarded("case2-polynomial",
                 "det W_y for W[1,0,1] equals |y1|^4|y2|^2+|y2|^4|y3|^2+|y3|^4|y1|^2-3|y1|^2|y2|^2|y3|^2, "
                 "which is nonnegative and vanishes on |y1|=|y2|=|y3|",
                 [&](ClaimRecord& rec) {
    std::mt19937_64 rng(seed);
    double min_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < unit_samples; ++i) min_value = std::min(min_value, case2_det_poly(normalized(gaussian_vector(rng, 3))));

    double manifold = 0.0;
    for (int i = 0; i < 100; ++i)
      manifold = std::max(manifold, std::abs(case2_det_poly(Complex(1.0 / std::sqrt(3.0)) * phase_vector(rng))));
    for (std::size_t k = 0; k < 3; ++k) manifold = std::max(manifold, std::abs(case2_det_poly(CVec::basis(3, k))));

    const CMat w = build(WitnessParams{1.0, 0.0, 1.0});
    double det_dev = 0.0;
    for (int i = 0; i < det_samples; ++i) {
      const CVec y = normalized(gaussian_vector(rng, 3));
      const Complex det = determinant(partial_trace_second(w, y));
      det_dev = std::max(det_dev, std::abs(det - case2_det_poly(y)));
    }
    rec.measured["unit_samples"] = unit_samples;
    rec.measured["min_value"] = min_value;
    rec.measured["max_abs_on_zero_manifold"] = manifold;
    rec.measured["det_samples"] = det_samples;
    rec.measured["max_abs_det_deviation"] = det_dev;
    rec.status = pass_if(min_value >= -1e-12 && manifold <= 1e-10 && det_dev <= 1e-10);
  });
}

ClaimRecord degenerate_point(int n_starts, std::uint64_t seed) {
  return guarded("degenerate-point",
                 "at b=c=1/3 (a=4/3) the closed forms are 0/0; the zero set is searched "
                 "numerically and its rank reported without a spanning verdict",
                 [&](ClaimRecord& rec) {
    const WitnessParams p = ellipse_from_a(kEllipseMaxA, Branch::Lower);
    const SpanReport r = numeric_zero_set(p, n_starts, kDefaultZeroTol, seed);
    rec.measured["n_starts"] = n_starts;
    rec.measured["zero_vectors"] = r.vectors.size();
    rec.measured["gram_rank"] = r.gram_rank;
    rec.measured["gram_spectrum"] = gram_spectrum(r.vectors);
    rec.status = r.gram_rank >= 7 && r.gram_rank <= 9 ? ClaimStatus::Degenerate : ClaimStatus::Fail;
  });
}

ClaimRecord determinism(std::uint64_t seed) {
  return guarded("determinism",
                 "seeded stochastic claims reproduce byte-identical records",
                 [&](ClaimRecord& rec) {
    auto once = [&] {
      json j = json::array();
      j.push_back(classifier_vs_seesaw(build_witness, 5, 4, seed).measured);
      j.push_back(degenerate_point(40, seed).measured);
      return j.dump();
    };
    const std::string first = once();
    const std::string second = once();
    rec.measured["bytes"] = first.size();
    rec.measured["identical"] = first == second;
    rec.status = pass_if(first == second);
  });
}

}  // namespace claims

VerifyReport run_verify(const VerifyOptions& opts) {
  const WitnessBuilder build = opts.tamper ? tampered_builder(*opts.tamper) : WitnessBuilder(build_witness);
  const int scale = opts.quick ? 4 : 1;
  const std::uint64_t seed = opts.seed;
  const int grid = opts.quick ? 7 : 25;

  VerifyReport report;
  report.claims.push_back(claims::witness_structure(build));
  report.claims.push_back(claims::classifier_vs_seesaw(build, grid, 16, seed));
  report.claims.push_back(claims::wy_projector_form(build, 100 / scale, seed + 1));
  report.claims.push_back(claims::canonical_seven_rank(build));
  report.claims.push_back(claims::case1_identities(build, 50 / scale, seed + 2));
  report.claims.push_back(claims::basis_determinant(20 / scale, seed + 3));
  report.claims.push_back(claims::spanning_sweep(build, 50 / scale, seed + 4));
  report.claims.push_back(claims::case2_polynomial(build, 10000 / scale, 100 / scale, seed + 5));
  report.claims.push_back(claims::degenerate_point(500 / scale, seed + 6));
  report.claims.push_back(claims::determinism(seed + 7));
  return report;
}

}  // namespace qwlab
