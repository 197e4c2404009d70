#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "cnlwiki/prediction.hpp"

namespace cnlwiki {

/// Error raised by every module. `code` is a stable machine-readable token
/// ("duplicate-lemma", "syntax-error", ...); `what()` is human text.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  Error(std::string code, const std::string& message, std::size_t position)
      : std::runtime_error(message), code_(std::move(code)), position_(position) {}

  Error(std::string code, const std::string& message, std::size_t position, Prediction prediction)
      : std::runtime_error(message),
        code_(std::move(code)),
        position_(position),
        prediction_(std::move(prediction)) {}

  const std::string& code() const noexcept { return code_; }
  const std::optional<std::size_t>& position() const noexcept { return position_; }
  const std::optional<Prediction>& prediction() const noexcept { return prediction_; }

 private:
  std::string code_;
  std::optional<std::size_t> position_;
  std::optional<Prediction> prediction_;
};

}  // namespace cnlwiki
