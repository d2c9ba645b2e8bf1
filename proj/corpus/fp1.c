// a == b never holds, but b = N*N is not a literal.
#define N 100

int main() {
  int size = 100;
  int a = N;
  int b = N * N;
  int arr[size];

#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 99; i++) {
    if (a == b) {
      arr[i] = arr[i + 1] + i;
    }
  }
}
