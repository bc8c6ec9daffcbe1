#include "cmbvs/sampler.hpp"

#include <cmath>
#include <sstream>

#include "cmbvs/special_functions.hpp"

namespace cmbvs {

namespace {

constexpr double kMaxLambda = 700.0;
// Floor for the gamma latents; shapes below one can underflow to zero.
constexpr double kMinLatent = 1e-100;

}  // namespace

void SamplerConfig::validate() const {
  if (iterations <= 0) throw ConfigError("SamplerConfig: iterations must be positive");
  if (burn_in < 0 || burn_in >= iterations)
    throw ConfigError("SamplerConfig: burn_in must lie in [0, iterations)");
  if (thin < 1) throw ConfigError("SamplerConfig: thin must be at least 1");
  if (!(rw_sd_alpha > 0.0) || !(rw_sd_coef > 0.0))
    throw ConfigError("SamplerConfig: proposal standard deviations must be positive");
}

Sampler::Sampler(const Dataset& data, Hyperparameters hp, SamplerConfig cfg,
                 PartitionScheme scheme, UpdateMask mask)
    : data_(data),
      hp_(std::move(hp)),
      cfg_(cfg),
      scheme_(std::move(scheme)),
      mask_(std::move(mask)),
      rng_(cfg.seed) {
  data_.validate();
  cfg_.validate();
  const int N = data_.n();
  const int J = data_.num_taxa();
  const int P = data_.num_covariates();
  const int P_dm = data_.num_covariates_dm();
  hp_.validate(J);
  if (scheme_.num_parts() != J)
    throw DimensionError("Sampler: partition scheme size does not match the data");
  if (!mask_.exclude_phi.empty() && static_cast<int>(mask_.exclude_phi.size()) != J)
    throw DimensionError("Sampler: exclude_phi mask length must equal J");
  if (!mask_.exclude_xi.empty() && static_cast<int>(mask_.exclude_xi.size()) != J - 1)
    throw DimensionError("Sampler: exclude_xi mask length must equal J-1");

  outcome_ = OutcomeParams::zeros(J, P);
  dm_ = DmParams::zeros(J, P_dm);
  for (int j = 0; j < J; ++j) {
    dm_.alpha[j] = std::log(data_.counts.col(j).cast<double>().mean() + 0.5);
  }
  aug_.k = data_.counts.cast<double>().array() + 0.5;
  aug_.u = Eigen::VectorXd::Ones(N);
  zdot_ = data_.row_totals();

  rebuild_dm_caches();

  log_k_ = aug_.k.array().log().matrix();
  k_total_ = aug_.k.rowwise().sum();
  balances_.resize(N, J - 1);
  for (int i = 0; i < N; ++i)
    balances_.row(i) = scheme_.balances_from_log(log_k_.row(i).transpose()).transpose();

  rebuild_outcome_caches();
}

void Sampler::check_lambda(double value, int subject, int taxon) const {
  if (value > kMaxLambda) {
    std::ostringstream msg;
    msg << "Sampler: linear predictor overflow at subject " << subject << ", taxon " << taxon
        << " (lambda = " << value << ")";
    throw NumericError(msg.str());
  }
}

void Sampler::rebuild_dm_caches() {
  lambda_ = lambda_matrix(dm_, data_);
  for (int i = 0; i < lambda_.rows(); ++i)
    for (int j = 0; j < lambda_.cols(); ++j) check_lambda(lambda_(i, j), i, j);
  gamma_ = lambda_.array().exp().matrix();
}

void Sampler::rebuild_outcome_caches() {
  const int N = data_.n();
  predictor_.resize(N);
  for (int i = 0; i < N; ++i) {
    double pred = outcome_.c0 + outcome_.c1 * static_cast<double>(data_.treatment[i]);
    pred += balances_.row(i).dot(outcome_.beta);
    for (int p = 0; p < data_.num_covariates(); ++p)
      pred += outcome_.kappa[p] * data_.covariates(i, p);
    predictor_[i] = pred;
  }
}

double Sampler::dm_column_loglik(int j, const Eigen::VectorXd& gamma_col) const {
  double ll = 0.0;
  for (int i = 0; i < data_.n(); ++i)
    ll += gamma_col[i] * log_k_(i, j) - log_gamma(gamma_col[i]);
  return ll;
}

double Sampler::outcome_delta_loglik(const Eigen::VectorXd& delta_pred) const {
  double acc = 0.0;
  for (int i = 0; i < data_.n(); ++i) {
    const double r = data_.outcome[i] - predictor_[i];
    const double rn = r - delta_pred[i];
    acc += r * r - rn * rn;
  }
  return acc / (2.0 * outcome_.sigma2);
}

bool Sampler::phi_allowed(int j) const {
  return mask_.exclude_phi.empty() || !mask_.exclude_phi[static_cast<std::size_t>(j)];
}

bool Sampler::xi_allowed(int j) const {
  return mask_.exclude_xi.empty() || !mask_.exclude_xi[static_cast<std::size_t>(j)];
}

void Sampler::update_u() {
  if (!mask_.update_augmentation) return;
  for (int i = 0; i < data_.n(); ++i) {
    if (!(k_total_[i] > 0.0)) {
      std::ostringstream msg;
      msg << "Sampler: nonpositive latent total for subject " << i;
      throw NumericError(msg.str());
    }
    aug_.u[i] = rng_.gamma_rate(zdot_[i], k_total_[i]);
  }
}

void Sampler::update_k() {
  if (!mask_.update_augmentation) return;
  const int N = data_.n();
  const int J = data_.num_taxa();
  Eigen::VectorXd k_new(J), log_k_new(J);
  for (int i = 0; i < N; ++i) {
    const double rate = 1.0 + aug_.u[i];
    for (int j = 0; j < J; ++j) {
      const double shape = gamma_(i, j) + static_cast<double>(data_.counts(i, j));
      double draw = rng_.gamma_rate(shape, rate);
      if (draw < kMinLatent) draw = kMinLatent;
      k_new[j] = draw;
      log_k_new[j] = std::log(draw);
    }
    const Eigen::VectorXd b_new = scheme_.balances_from_log(log_k_new);
    const double d_pred = (b_new - balances_.row(i).transpose()).dot(outcome_.beta);
    double delta = 0.0;
    if (!cfg_.prior_only && d_pred != 0.0) {
      const double r = data_.outcome[i] - predictor_[i];
      const double rn = r - d_pred;
      delta = (r * r - rn * rn) / (2.0 * outcome_.sigma2);
    }
    if (!std::isfinite(delta)) {
      std::ostringstream msg;
      msg << "Sampler: nonfinite acceptance ratio in latent update for subject " << i;
      throw NumericError(msg.str());
    }
    ++stats_.k_rows.proposed;
    if (std::log(rng_.uniform()) < delta) {
      ++stats_.k_rows.accepted;
      aug_.k.row(i) = k_new.transpose();
      log_k_.row(i) = log_k_new.transpose();
      k_total_[i] = k_new.sum();
      balances_.row(i) = b_new.transpose();
      predictor_[i] += d_pred;
    }
  }
}

void Sampler::update_alpha() {
  if (!mask_.update_dm) return;
  const int N = data_.n();
  const int J = data_.num_taxa();
  Eigen::VectorXd gamma_new(N);
  for (int j = 0; j < J; ++j) {
    const double cur = dm_.alpha[j];
    const double prop = cur + rng_.normal(0.0, cfg_.rw_sd_alpha);
    const double shift = prop - cur;
    for (int i = 0; i < N; ++i) {
      const double lam = lambda_(i, j) + shift;
      check_lambda(lam, i, j);
      gamma_new[i] = std::exp(lam);
    }
    double delta = log_normal_pdf(prop, 0.0, hp_.sigma2_alpha) -
                   log_normal_pdf(cur, 0.0, hp_.sigma2_alpha);
    if (!cfg_.prior_only)
      delta += dm_column_loglik(j, gamma_new) - dm_column_loglik(j, gamma_.col(j));
    ++stats_.alpha.proposed;
    if (std::log(rng_.uniform()) < delta) {
      ++stats_.alpha.accepted;
      dm_.alpha[j] = prop;
      lambda_.col(j).array() += shift;
      gamma_.col(j) = gamma_new;
    }
  }
}

void Sampler::update_varphi_phi() {
  const int N = data_.n();
  const int J = data_.num_taxa();
  std::vector<int> candidates;
  candidates.reserve(static_cast<std::size_t>(J));
  for (int j = 0; j < J; ++j)
    if (phi_allowed(j)) candidates.push_back(j);
  if (candidates.empty()) return;

  std::vector<int> chosen;
  if (cfg_.scan == ScanMode::kFull) {
    chosen = candidates;
  } else {
    chosen.push_back(candidates[static_cast<std::size_t>(
        rng_.uniform_int(0, static_cast<long>(candidates.size()) - 1))]);
  }

  Eigen::VectorXd gamma_new(N);
  for (int j : chosen) {
    const bool adding = dm_.varphi[j] == 0;
    const double cur = dm_.phi[j];
    const double prop = adding ? rng_.normal(0.0, std::sqrt(hp_.r2[j])) : 0.0;
    const double shift = prop - cur;
    for (int i = 0; i < N; ++i) {
      const double lam = lambda_(i, j) + shift * static_cast<double>(data_.treatment[i]);
      check_lambda(lam, i, j);
      gamma_new[i] = std::exp(lam);
    }
    // Slab proposal matches the slab prior, so only the likelihood and the
    // marginalized Beta-Bernoulli odds remain in the ratio.
    double delta = adding ? std::log(hp_.a_varphi / hp_.b_varphi)
                          : std::log(hp_.b_varphi / hp_.a_varphi);
    if (!cfg_.prior_only)
      delta += dm_column_loglik(j, gamma_new) - dm_column_loglik(j, gamma_.col(j));
    ++stats_.phi_add_delete.proposed;
    if (std::log(rng_.uniform()) < delta) {
      ++stats_.phi_add_delete.accepted;
      dm_.varphi[j] = adding ? 1 : 0;
      dm_.phi[j] = prop;
      for (int i = 0; i < N; ++i)
        lambda_(i, j) += shift * static_cast<double>(data_.treatment[i]);
      gamma_.col(j) = gamma_new;
    }
  }
}

void Sampler::update_zeta_theta() {
  const int N = data_.n();
  const int J = data_.num_taxa();
  const int P_dm = data_.num_covariates_dm();
  if (P_dm == 0) return;

  std::vector<std::pair<int, int>> chosen;
  if (cfg_.scan == ScanMode::kFull) {
    for (int j = 0; j < J; ++j)
      for (int p = 0; p < P_dm; ++p) chosen.emplace_back(j, p);
  } else {
    const long flat = rng_.uniform_int(0, static_cast<long>(J) * P_dm - 1);
    chosen.emplace_back(static_cast<int>(flat / P_dm), static_cast<int>(flat % P_dm));
  }

  Eigen::VectorXd gamma_new(N);
  for (auto [j, p] : chosen) {
    const bool adding = dm_.zeta(j, p) == 0;
    const double cur = dm_.theta(j, p);
    const double prop = adding ? rng_.normal(0.0, std::sqrt(hp_.r2[j])) : 0.0;
    const double shift = prop - cur;
    for (int i = 0; i < N; ++i) {
      const double lam = lambda_(i, j) + shift * data_.covariates_dm(i, p);
      check_lambda(lam, i, j);
      gamma_new[i] = std::exp(lam);
    }
    double delta =
        adding ? std::log(hp_.a_zeta / hp_.b_zeta) : std::log(hp_.b_zeta / hp_.a_zeta);
    if (!cfg_.prior_only)
      delta += dm_column_loglik(j, gamma_new) - dm_column_loglik(j, gamma_.col(j));
    ++stats_.theta_add_delete.proposed;
    if (std::log(rng_.uniform()) < delta) {
      ++stats_.theta_add_delete.accepted;
      dm_.zeta(j, p) = adding ? 1 : 0;
      dm_.theta(j, p) = prop;
      for (int i = 0; i < N; ++i) lambda_(i, j) += shift * data_.covariates_dm(i, p);
      gamma_.col(j) = gamma_new;
    }
  }
}

void Sampler::dm_within_refresh() {
  const int N = data_.n();
  const int J = data_.num_taxa();
  Eigen::VectorXd gamma_new(N);

  for (int j = 0; j < J; ++j) {
    if (dm_.varphi[j] != 1) continue;
    const double cur = dm_.phi[j];
    const double prop = cur + rng_.normal(0.0, cfg_.rw_sd_coef);
    const double shift = prop - cur;
    for (int i = 0; i < N; ++i) {
      const double lam = lambda_(i, j) + shift * static_cast<double>(data_.treatment[i]);
      check_lambda(lam, i, j);
      gamma_new[i] = std::exp(lam);
    }
    double delta = log_normal_pdf(prop, 0.0, hp_.r2[j]) - log_normal_pdf(cur, 0.0, hp_.r2[j]);
    if (!cfg_.prior_only)
      delta += dm_column_loglik(j, gamma_new) - dm_column_loglik(j, gamma_.col(j));
    ++stats_.dm_within.proposed;
    if (std::log(rng_.uniform()) < delta) {
      ++stats_.dm_within.accepted;
      dm_.phi[j] = prop;
      for (int i = 0; i < N; ++i)
        lambda_(i, j) += shift * static_cast<double>(data_.treatment[i]);
      gamma_.col(j) = gamma_new;
    }
  }

  for (int j = 0; j < J; ++j) {
    for (int p = 0; p < data_.num_covariates_dm(); ++p) {
      if (dm_.zeta(j, p) != 1) continue;
      const double cur = dm_.theta(j, p);
      const double prop = cur + rng_.normal(0.0, cfg_.rw_sd_coef);
      const double shift = prop - cur;
      for (int i = 0; i < N; ++i) {
        const double lam = lambda_(i, j) + shift * data_.covariates_dm(i, p);
        check_lambda(lam, i, j);
        gamma_new[i] = std::exp(lam);
      }
      double delta =
          log_normal_pdf(prop, 0.0, hp_.r2[j]) - log_normal_pdf(cur, 0.0, hp_.r2[j]);
      if (!cfg_.prior_only)
        delta += dm_column_loglik(j, gamma_new) - dm_column_loglik(j, gamma_.col(j));
      ++stats_.dm_within.proposed;
      if (std::log(rng_.uniform()) < delta) {
        ++stats_.dm_within.accepted;
        dm_.theta(j, p) = prop;
        for (int i = 0; i < N; ++i) lambda_(i, j) += shift * data_.covariates_dm(i, p);
        gamma_.col(j) = gamma_new;
      }
    }
  }
}

void Sampler::update_spike_slab_dm() {
  if (!mask_.update_dm) return;
  update_varphi_phi();
  update_zeta_theta();
  dm_within_refresh();
}

void Sampler::update_xi_beta() {
  const int N = data_.n();
  const int M = static_cast<int>(outcome_.beta.size());
  std::vector<int> candidates;
  for (int j = 0; j < M; ++j)
    if (xi_allowed(j)) candidates.push_back(j);
  if (candidates.empty()) return;

  std::vector<int> chosen;
  if (cfg_.scan == ScanMode::kFull) {
    chosen = candidates;
  } else {
    chosen.push_back(candidates[static_cast<std::size_t>(
        rng_.uniform_int(0, static_cast<long>(candidates.size()) - 1))]);
  }

  Eigen::VectorXd d_pred(N);
  for (int j : chosen) {
    const bool adding = outcome_.xi[j] == 0;
    const double cur = outcome_.beta[j];
    const double prop =
        adding ? rng_.normal(0.0, std::sqrt(hp_.h_beta * outcome_.sigma2)) : 0.0;
    const double shift = prop - cur;
    d_pred = shift * balances_.col(j);
    double delta = adding ? std::log(hp_.a_xi / hp_.b_xi) : std::log(hp_.b_xi / hp_.a_xi);
    if (!cfg_.prior_only) delta += outcome_delta_loglik(d_pred);
    ++stats_.xi_add_delete.proposed;
    if (std::log(rng_.uniform()) < delta) {
      ++stats_.xi_add_delete.accepted;
      outcome_.xi[j] = adding ? 1 : 0;
      outcome_.beta[j] = prop;
      predictor_ += d_pred;
    }
  }
}

void Sampler::update_nu_kappa() {
  const int N = data_.n();
  const int P = data_.num_covariates();
  if (P == 0) return;

  std::vector<int> chosen;
  if (cfg_.scan == ScanMode::kFull) {
    for (int p = 0; p < P; ++p) chosen.push_back(p);
  } else {
    chosen.push_back(static_cast<int>(rng_.uniform_int(0, P - 1)));
  }

  Eigen::VectorXd d_pred(N);
  for (int p : chosen) {
    const bool adding = outcome_.nu[p] == 0;
    const double cur = outcome_.kappa[p];
    const double prop =
        adding ? rng_.normal(0.0, std::sqrt(hp_.h_kappa * outcome_.sigma2)) : 0.0;
    const double shift = prop - cur;
    d_pred = shift * data_.covariates.col(p);
    double delta = adding ? std::log(hp_.a_nu / hp_.b_nu) : std::log(hp_.b_nu / hp_.a_nu);
    if (!cfg_.prior_only) delta += outcome_delta_loglik(d_pred);
    ++stats_.nu_add_delete.proposed;
    if (std::log(rng_.uniform()) < delta) {
      ++stats_.nu_add_delete.accepted;
      outcome_.nu[p] = adding ? 1 : 0;
      outcome_.kappa[p] = prop;
      predictor_ += d_pred;
    }
  }
}

void Sampler::outcome_within_refresh() {
  const int N = data_.n();
  Eigen::VectorXd d_pred(N);

  for (int j = 0; j < outcome_.beta.size(); ++j) {
    if (outcome_.xi[j] != 1) continue;
    const double cur = outcome_.beta[j];
    const double prop = cur + rng_.normal(0.0, cfg_.rw_sd_coef);
    d_pred = (prop - cur) * balances_.col(j);
    double delta = log_normal_pdf(prop, 0.0, hp_.h_beta * outcome_.sigma2) -
                   log_normal_pdf(cur, 0.0, hp_.h_beta * outcome_.sigma2);
    if (!cfg_.prior_only) delta += outcome_delta_loglik(d_pred);
    ++stats_.outcome_within.proposed;
    if (std::log(rng_.uniform()) < delta) {
      ++stats_.outcome_within.accepted;
      outcome_.beta[j] = prop;
      predictor_ += d_pred;
    }
  }

  for (int p = 0; p < outcome_.kappa.size(); ++p) {
    if (outcome_.nu[p] != 1) continue;
    const double cur = outcome_.kappa[p];
    const double prop = cur + rng_.normal(0.0, cfg_.rw_sd_coef);
    d_pred = (prop - cur) * data_.covariates.col(p);
    double delta = log_normal_pdf(prop, 0.0, hp_.h_kappa * outcome_.sigma2) -
                   log_normal_pdf(cur, 0.0, hp_.h_kappa * outcome_.sigma2);
    if (!cfg_.prior_only) delta += outcome_delta_loglik(d_pred);
    ++stats_.outcome_within.proposed;
    if (std::log(rng_.uniform()) < delta) {
      ++stats_.outcome_within.accepted;
      outcome_.kappa[p] = prop;
      predictor_ += d_pred;
    }
  }
}

void Sampler::update_c0_c1_gibbs() {
  const int N = data_.n();
  {
    const double cur = outcome_.c0;
    double mean, var;
    if (cfg_.prior_only) {
      mean = 0.0;
      var = hp_.h_c * outcome_.sigma2;
    } else {
      double sum = 0.0;
      for (int i = 0; i < N; ++i) sum += data_.outcome[i] - predictor_[i] + cur;
      const double denom = static_cast<double>(N) + 1.0 / hp_.h_c;
      mean = sum / denom;
      var = outcome_.sigma2 / denom;
    }
    const double draw = rng_.normal(mean, std::sqrt(var));
    predictor_.array() += draw - cur;
    outcome_.c0 = draw;
  }
  {
    const double cur = outcome_.c1;
    double mean, var;
    if (cfg_.prior_only) {
      mean = 0.0;
      var = hp_.h_c * outcome_.sigma2;
    } else {
      double sum = 0.0, tt = 0.0;
      for (int i = 0; i < N; ++i) {
        const double t = static_cast<double>(data_.treatment[i]);
        sum += t * (data_.outcome[i] - predictor_[i] + cur * t);
        tt += t * t;
      }
      const double denom = tt + 1.0 / hp_.h_c;
      mean = sum / denom;
      var = outcome_.sigma2 / denom;
    }
    const double draw = rng_.normal(mean, std::sqrt(var));
    for (int i = 0; i < N; ++i)
      predictor_[i] += (draw - cur) * static_cast<double>(data_.treatment[i]);
    outcome_.c1 = draw;
  }
}

void Sampler::update_sigma2_gibbs() {
  const int N = data_.n();
  long included = 0;
  double quad = (outcome_.c0 * outcome_.c0 + outcome_.c1 * outcome_.c1) / hp_.h_c;
  for (int j = 0; j < outcome_.beta.size(); ++j) {
    if (outcome_.xi[j] == 1) {
      ++included;
      quad += outcome_.beta[j] * outcome_.beta[j] / hp_.h_beta;
    }
  }
  for (int p = 0; p < outcome_.kappa.size(); ++p) {
    if (outcome_.nu[p] == 1) {
      ++included;
      quad += outcome_.kappa[p] * outcome_.kappa[p] / hp_.h_kappa;
    }
  }
  // c0 and c1 pool with the included coefficients because every slab scales
  // with sigma2.
  double shape = hp_.a0 + (2.0 + static_cast<double>(included)) / 2.0;
  double rate = hp_.b0 + quad / 2.0;
  if (!cfg_.prior_only) {
    shape += static_cast<double>(N) / 2.0;
    double rss = 0.0;
    for (int i = 0; i < N; ++i) {
      const double r = data_.outcome[i] - predictor_[i];
      rss += r * r;
    }
    rate += rss / 2.0;
  }
  outcome_.sigma2 = rng_.inverse_gamma(shape, rate);
}

void Sampler::update_outcome_block() {
  if (!mask_.update_outcome) return;
  rebuild_outcome_caches();  // bound incremental drift once per sweep
  update_xi_beta();
  update_nu_kappa();
  outcome_within_refresh();
  update_c0_c1_gibbs();
  update_sigma2_gibbs();
}

void Sampler::sweep() {
  update_u();
  update_k();
  update_alpha();
  update_spike_slab_dm();
  update_outcome_block();
}

void Sampler::snapshot(PosteriorTrace& trace) const {
  if (!exclusion_coupling_holds(outcome_, dm_))
    throw NumericError("Sampler: exclusion coupling violated in a retained sample");
  trace.outcome.push_back(outcome_);
  trace.dm.push_back(dm_);
  if (cfg_.store_psi) trace.psi.push_back(psi());
}

PosteriorTrace Sampler::run() {
  PosteriorTrace trace;
  trace.n = data_.n();
  trace.J = data_.num_taxa();
  trace.P = data_.num_covariates();
  trace.P_dm = data_.num_covariates_dm();
  trace.taxon_order = scheme_.taxon_order();
  trace.iterations = cfg_.iterations;
  trace.burn_in = cfg_.burn_in;
  trace.thin = cfg_.thin;
  const long retained = (cfg_.iterations - cfg_.burn_in) / cfg_.thin;
  trace.outcome.reserve(static_cast<std::size_t>(retained));
  trace.dm.reserve(static_cast<std::size_t>(retained));

  for (long s = 1; s <= cfg_.iterations; ++s) {
    sweep();
    if (s > cfg_.burn_in && (s - cfg_.burn_in) % cfg_.thin == 0) snapshot(trace);
  }
  trace.acceptance = stats_;
  return trace;
}

Eigen::MatrixXd Sampler::psi() const {
  Eigen::MatrixXd out = aug_.k;
  for (int i = 0; i < out.rows(); ++i) out.row(i) /= k_total_[i];
  return out;
}

void Sampler::set_dm_state(DmParams dm) {
  dm_ = std::move(dm);
  rebuild_dm_caches();
}

void Sampler::set_outcome_state(OutcomeParams s) {
  outcome_ = std::move(s);
  rebuild_outcome_caches();
}

void Sampler::set_augmentation(Augmentation aug) {
  aug_ = std::move(aug);
  const int N = data_.n();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < data_.num_taxa(); ++j)
      if (!(aug_.k(i, j) > 0.0)) throw DomainError("set_augmentation: k must be positive");
  log_k_ = aug_.k.array().log().matrix();
  k_total_ = aug_.k.rowwise().sum();
  for (int i = 0; i < N; ++i)
    balances_.row(i) = scheme_.balances_from_log(log_k_.row(i).transpose()).transpose();
  rebuild_outcome_caches();
}

Eigen::VectorXd mppi(const PosteriorTrace& trace, IndicatorFamily family) {
  if (trace.size() == 0) throw UsageError("mppi: empty trace");
  const auto count = static_cast<double>(trace.size());
  switch (family) {
    case IndicatorFamily::kXi: {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(trace.J - 1);
      for (const auto& s : trace.outcome) acc += s.xi.cast<double>();
      return acc / count;
    }
    case IndicatorFamily::kNu: {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(trace.P);
      for (const auto& s : trace.outcome) acc += s.nu.cast<double>();
      return acc / count;
    }
    case IndicatorFamily::kVarphi: {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(trace.J);
      for (const auto& s : trace.dm) acc += s.varphi.cast<double>();
      return acc / count;
    }
    case IndicatorFamily::kZeta: {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(trace.J * trace.P_dm);
      for (const auto& s : trace.dm) {
        for (int j = 0; j < trace.J; ++j)
          for (int p = 0; p < trace.P_dm; ++p)
            acc[j * trace.P_dm + p] += static_cast<double>(s.zeta(j, p));
      }
      return acc / count;
    }
  }
  throw UsageError("mppi: unknown indicator family");
}

PosteriorTrace run_chain(const Dataset& data, const Hyperparameters& hp,
                         const SamplerConfig& cfg, const PartitionScheme& scheme,
                         const UpdateMask& mask) {
  Sampler sampler(data, hp, cfg, scheme, mask);
  return sampler.run();
}

}  // namespace cmbvs
