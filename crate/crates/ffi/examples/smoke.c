/* Minimal C consumer of the matfib FFI. Build from the workspace root:
 *
 *   cargo build -p matfib-ffi
 *   cc -std=c11 -Icrates/ffi/include crates/ffi/examples/smoke.c \
 *      target/debug/libmatfib_ffi.a -lpthread -ldl -lm -o smoke && ./smoke
 */
#include <assert.h>
#include <stdio.h>
#include "matfib.h"

int main(void) {
    printf("version=%s\n", matfib_version());
    MatfibMatrix *m = NULL;
    assert(matfib_matrix_builtin("CPLand", &m) == MATFIB_STATUS_OK);
    bool holds = false;
    char *witness = NULL;
    assert(matfib_entails(m, "p1, p2 |- and(p1,p2)", &holds, &witness) == MATFIB_STATUS_OK);
    assert(holds && witness == NULL);
    assert(matfib_is_tautology(m, "and(p,neg(p))", &holds, &witness) == MATFIB_STATUS_OK);
    assert(!holds);
    printf("witness=%s\n", witness);
    matfib_string_free(witness);
    matfib_matrix_free(m);
    assert(matfib_matrix_builtin("Bogus", &m) == MATFIB_STATUS_INVALID_INPUT);
    char *msg = matfib_last_error_message();
    printf("error=%s\n", msg);
    matfib_string_free(msg);
    puts("ok");
    return 0;
}
