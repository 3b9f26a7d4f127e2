#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "latinv/lattice.hpp"

namespace latinv {

// Isocrystal frames: an ambient space L^{h_total} with a distinguished basis
// organized in t-twisted chains, the semilinear operators living on it, and
// (for the polarized kinds) a form.
//
//  superbasic-res:  G = Res_{F'|F} GL_h, F'/F unramified of degree d; basis
//                   e_{i,tau} with e_{i+h,tau} = t e_{i,tau} and
//                   Phi(e_{i,tau}) = e_{i+m_{sigma tau}, sigma tau}.
//  isoclinic-gl:    direct sum over z of l_z copies of the simple isocrystal
//                   of slope m_z/h_z; Phi(e_{z,i,l}) = e_{z,i,l+m_z} with
//                   e_{z,i,l+h_z} = t e_{z,i,l}.  pi_z shifts l by one.
//  gsp4:            chains e_1,e_2 and f_1,f_2 with Phi the chain shift and
//                   the alternating form <e_1,f_2> = <e_2,f_1> = 1.
//  unitary-n0:      the space N_0 of a polarized unitary isocrystal of
//                   signature (1,n-1): basis g_1..g_n fixed by
//                   tau = eps^{-1} F^2, hermitian gram diag(t,...,t,1).
enum class FrameKind { SuperbasicRes, IsoclinicGL, GSp4, UnitaryN0 };

struct SlopeDatum {
    int m = 0, h = 1, l = 1;
};

struct Token {
    enum Kind { Phi, PhiInv, V, Pi, PiInv, Tau0, Tau1, Eps } kind;
    int arg = 0;  // Eps: power; Pi/PiInv: summand index z, -1 = all summands
};
using SemilinearWord = std::vector<Token>;

class Frame {
public:
    static Frame superbasic_res(FieldCtxPtr ctx, int h, std::vector<int> m_tau);
    static Frame isoclinic_gl(FieldCtxPtr ctx, std::vector<SlopeDatum> slopes);
    static Frame gsp4(FieldCtxPtr ctx);
    static Frame unitary_n0(FieldCtxPtr ctx, int n);

    FrameKind kind() const { return kind_; }
    const FieldCtx* field() const { return ctx_.get(); }
    FieldCtxPtr field_ptr() const { return ctx_; }
    int dim() const { return h_total_; }
    int res_degree() const { return d_; }
    int chain_len(int comp) const { return chain_len_[static_cast<size_t>(comp)]; }
    int num_components() const { return static_cast<int>(chain_len_.size()); }
    const std::vector<SlopeDatum>& slopes() const { return slopes_; }
    const std::vector<int>& m_tau() const { return m_tau_; }
    int unitary_n() const { return n_; }
    bool has_form() const { return form_.has_value(); }
    const Form& form() const;
    // sigma power of tau0 (= dh for superbasic-res, h for isoclinic, 2 else)
    int tau0_twist() const { return tau0_twist_; }
    // sigma power of tau1 = (b sigma)^a eps^{a'}, the minimal positive a with
    // a m + a' h = 1 (isoclinic frames; 0 for the linear res uniformizer)
    int tau1_twist() const { return tau1_twist_; }

    // GL-block structure of the ambient space: (offset, size) per factor
    std::vector<std::pair<int, int>> blocks() const;

    // flat coordinate of chain position: component c, position 0 <= j < len
    int coord(int comp, int j) const;
    // basis vector e with chain index i in Z (wraps with t-powers)
    std::vector<Series> chain_vector(int comp, int idx) const;
    std::vector<Series> zero_vector() const;

    std::vector<Series> apply_phi(const std::vector<Series>& v) const;
    std::vector<Series> apply_phi_inv(const std::vector<Series>& v) const;
    std::vector<Series> apply_v_op(const std::vector<Series>& v) const;
    std::vector<Series> apply_pi(const std::vector<Series>& v, int z = -1, int count = 1) const;
    std::vector<Series> apply_tau0(const std::vector<Series>& v) const;
    std::vector<Series> apply_tau1(const std::vector<Series>& v) const;
    std::vector<Series> apply_eps(const std::vector<Series>& v, int k) const;
    std::vector<Series> apply_token(const std::vector<Series>& v, const Token& t) const;
    std::vector<Series> apply_word(const SemilinearWord& w, const std::vector<Series>& v) const;

    Lattice map_lattice(const Lattice& M,
                        const std::function<std::vector<Series>(const std::vector<Series>&)>& op) const;
    Lattice phi_lattice(const Lattice& M) const;
    Lattice v_lattice(const Lattice& M) const;
    Lattice pi_lattice(const Lattice& M, int count) const;  // central pi^count
    Lattice tau0_lattice(const Lattice& M) const;
    Lattice tau1_lattice(const Lattice& M) const;
    Lattice standard_lattice() const;

private:
    Frame() = default;
    void index_chains();

    FrameKind kind_ = FrameKind::IsoclinicGL;
    FieldCtxPtr ctx_;
    int h_total_ = 0;
    int d_ = 1;                 // superbasic-res degree
    int res_h_ = 0;
    std::vector<int> m_tau_;
    std::vector<SlopeDatum> slopes_;
    int n_ = 0;                 // unitary dimension
    std::optional<Form> form_;
    int tau0_twist_ = 0;
    int tau1_twist_ = 0;

    // chain layout: component -> (flat offset, length, phi shift, phi target comp)
    std::vector<int> chain_off_, chain_len_, phi_shift_;
    std::vector<int> phi_target_;
};

// Lattice invariant under Phi and V (equivalently M >= Phi(M) >= tM).
bool is_dieudonne(const Frame& fr, const Lattice& M);

// relative position with the frame's block grading (concatenated per block)
Cochar frame_inv(const Frame& fr, const Lattice& M1, const Lattice& M2);

// inv(M, Phi M) = mu, the defining membership for the mu-cell
bool in_adlv(const Frame& fr, const Lattice& M, const Cochar& mu);

// rk(M / (Phi M + V M)) computed in the residue M/tM
int a_number(const Frame& fr, const Lattice& M);

// smallest Phi- and V-stable O-span containing v (rank may be < dim)
Lattice dieudonne_closure(const Frame& fr, const std::vector<Series>& v, int depth = -1);

// M-coordinates of v when v in M
std::optional<std::vector<Series>> coords_in(const std::vector<Series>& v, const Lattice& M);

bool is_minuscule(const Cochar& mu);

}  // namespace latinv
