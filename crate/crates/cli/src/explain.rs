//! Static documentation for the suites, printed by `currents explain`.

pub fn explain(check: &str) -> Option<&'static str> {
    Some(match check {
        "ad-cohomology" => {
            "Computes the Dolbeault cohomology of the rational-form model A_d \
             of functions on punctured affine d-space, one finite slice per \
             (torus weight, denominator power, bidegree).\n\
             Anchor: H(A_d) = C[z_1..z_d] in degree 0 plus \
             omega_BM * C[1/z_1..1/z_d] in degree d-1.\n\
             Window semantics: weights range over the box [-r, r]^d, the \
             denominator (z z*)^K is truncated at --kmax, and every dimension \
             is recomputed at kmax+1; any change is reported as window \
             instability, never as an answer."
        }
        "residue" => {
            "Checks the defining properties of the higher residue: the unique \
             rotation-equivariant functional on top forms normalized by \
             Res(omega_BM dz) = 1.\n\
             Anchor: Res(z^a omega_BM dz) = [a = 0]; Res vanishes on exact \
             integrands.\n\
             Window semantics: the residue is read off in the weight-zero \
             slice and revalidated at kmax+1."
        }
        "extension-check" => {
            "Builds the central extension of A_d (x) g by the residue cocycle \
             theta(x_0,..,x_d) Res(a_0 del a_1 ... del a_d) and verifies the \
             homotopy Jacobi identities on random tuples.\n\
             Anchor: for each arity, the signed sum over splittings of nested \
             brackets vanishes.\n\
             Window semantics: samples are drawn inside a weight box small \
             enough that all products stay residue-computable."
        }
        "lqt" => {
            "Pulls the universal cyclic cochain \
             Theta_d(a_0,..,a_d) = Res(a_0 del a_1 ... del a_d) back to \
             gl_N(A_d) through the generalized trace and compares with the \
             residue cocycle of the degree-(d+1) trace form.\n\
             Anchor: lqt_N(Theta_d) = j(theta_{d+1,N}), checked value by \
             value on random matrix tuples.\n\
             Window semantics: inputs are random forms in a fixed weight box; \
             both sides are evaluated exactly."
        }
        "hopf-homology" => {
            "Computes homology of the small model g + g[-1] whose \
             Chevalley-Eilenberg chains calculate Hochschild homology of the \
             enveloping algebra U(g), per symmetric degree.\n\
             Anchor: H_0 per Sym-degree = coinvariants Sym^s(g)_g; for sl_2 \
             this is the Casimir line with dims (1,0,1,0,1) up to cutoff 4.\n\
             Window semantics: the Sym-power filtration is truncated at \
             --sym-cutoff; each power is a finite, exactly-solved block."
        }
        "free-field-d1" => {
            "Realizes the d = 1 currents on a mode algebra with anticommuting \
             creation/annihilation pairs and measures the central term of \
             current commutators.\n\
             Anchor: [J_m(x), J_n(y)] has central part \
             m delta_{m+n,0} tr(rho(x) rho(y)).\n\
             Window semantics: modes are truncated at a cutoff; results are \
             exact whenever |m| + |n| stays within it."
        }
        "anomaly-integral" => {
            "Evaluates the one-loop wheel integral \
             int_{[eps,L]^d} eps/(eps + t_1 + .. + t_d)^{d+1} by adaptive \
             Gauss quadrature with a certified error bound.\n\
             Anchor: the eps -> 0 value is 1/(d+1)! and is independent of L; \
             at d = 1 the closed form 1/2 - eps/(eps+L) is matched to 1e-9.\n\
             Window semantics: this is the only floating-point computation in \
             the toolchain; every value carries its quadrature error bound."
        }
        "clifford" => {
            "Verifies Morita triviality of the Clifford algebra of V + V*: \
             the commutator quotient HH_0 is one-dimensional, spanned by the \
             class of 1, and the Berezin functional picks the top fermion.\n\
             Anchor: dim HH_0(Cl(V + V*)) = 1 for dim V in {1,2,3}; \
             Berezin(v_1 v*_1 ... v_n v*_n) = 1.\n\
             Window semantics: none; the algebra is finite-dimensional and \
             handled exactly."
        }
        _ => return None,
    })
}
