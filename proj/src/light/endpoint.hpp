#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ledger/block.hpp"
#include "ledger/merkle.hpp"
#include "ledger/transaction.hpp"

namespace esp2cs::gateway {
class Service;
}

namespace esp2cs::light {

/// Transport failure or a malformed gateway reply.
class EndpointError : public Error {
public:
  using Error::Error;
};

struct RelayResult {
  std::optional<Digest> tx_hash;
  int status = 0;
  /// Gateway's rejection reason, verbatim (e.g. "BadNonce").
  std::string error;
};

struct RemoteReceipt {
  Digest tx_hash;
  bool success = false;
  std::string revert_reason;
  std::uint64_t gas_used = 0;
  Bytes return_value;
  std::uint64_t block_height = 0;
  Digest block_hash;
};

struct RemoteProof {
  std::uint64_t header_height = 0;
  Digest block_hash;
  MerkleProof proof;
};

/// What a light client needs from a cloud server.
class GatewayEndpoint {
public:
  virtual ~GatewayEndpoint() = default;
  virtual std::vector<BlockHeader> headers(std::uint64_t from, std::size_t limit) = 0;
  virtual RelayResult submit(const Transaction& tx) = 0;
  virtual std::optional<RemoteReceipt> receipt(const Digest& tx_hash) = 0;
  virtual std::optional<RemoteProof> proof(const Digest& tx_hash) = 0;
};

/// Speaks the /v1 JSON API; subclasses supply the transport.
class JsonEndpoint : public GatewayEndpoint {
public:
  std::vector<BlockHeader> headers(std::uint64_t from, std::size_t limit) override;
  RelayResult submit(const Transaction& tx) override;
  std::optional<RemoteReceipt> receipt(const Digest& tx_hash) override;
  std::optional<RemoteProof> proof(const Digest& tx_hash) override;

protected:
  struct Reply {
    int status = 0;
    std::string body;
  };
  virtual Reply get(const std::string& path, const std::map<std::string, std::string>& query) = 0;
  virtual Reply post(const std::string& path, const std::string& body) = 0;
};

/// Calls a gateway Service in the same process, bypassing sockets.
class InProcessEndpoint : public JsonEndpoint {
public:
  explicit InProcessEndpoint(gateway::Service& service) : service_(service) {}

protected:
  Reply get(const std::string& path, const std::map<std::string, std::string>& query) override;
  Reply post(const std::string& path, const std::string& body) override;

private:
  gateway::Service& service_;
};

/// HTTP client for a remote gateway at host:port.
class HttpEndpoint : public JsonEndpoint {
public:
  HttpEndpoint(std::string host, int port);
  ~HttpEndpoint() override;

protected:
  Reply get(const std::string& path, const std::map<std::string, std::string>& query) override;
  Reply post(const std::string& path, const std::string& body) override;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace esp2cs::light
