#pragma once

#include <stdexcept>
#include <string>

namespace benchaudit {

class GatewayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Worth retrying: connection failures, 408/429/5xx, quota blips.
class TransientError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

// Bad or missing credentials; aborts the run immediately.
class AuthError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

class FatalError : public GatewayError {
 public:
  using GatewayError::GatewayError;
};

}  // namespace benchaudit
