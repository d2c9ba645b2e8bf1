#define N 100

int main() {
  int size = 100;
  int a = 0;
  int b = N;
  int arr[size];

#pragma omp parallel for
#pragma drs
  for (int i = 0; i < N; i++) {
    if (a == 0 && b != N) {
      arr[i] = arr[i] + 1;
      arr[i] = arr[i + 1] + 1;
    }
  }
}
